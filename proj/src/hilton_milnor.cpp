#include "pdloop/hilton_milnor.hpp"

#include <algorithm>
#include <numeric>

#include "pdloop/error.hpp"
#include "pdloop/normalize.hpp"
#include "wedge_counts.hpp"

namespace pdloop {

namespace {

/// Lyndon words as the prenecklaces whose period equals their length,
/// generated depth-first (so in lex order) with weight pruning.
class LyndonGenerator {
 public:
  LyndonGenerator(const std::vector<int>& degrees, int N, std::size_t cap) : deg_(degrees), N_(N), cap_(cap) {}

  std::vector<LyndonWord> run() {
    for (int first = 0; first < static_cast<int>(deg_.size()); ++first) {
      word_.assign(1, first);
      extend(1, deg_[static_cast<std::size_t>(first)]);
    }
    std::stable_sort(out_.begin(), out_.end(),
                     [](const LyndonWord& a, const LyndonWord& b) { return a.length() < b.length(); });
    return std::move(out_);
  }

 private:
  void extend(std::size_t period, int weight) {
    if (weight > N_) return;
    if (period == word_.size()) {
      if (out_.size() == cap_) {
        throw Error(ErrorCode::ExpansionTooLarge, "more than " + std::to_string(cap_) + " Lyndon words");
      }
      out_.push_back({word_, weight});
    }
    const int repeat = word_[word_.size() - period];
    for (int next = repeat; next < static_cast<int>(deg_.size()); ++next) {
      const int w = weight + deg_[static_cast<std::size_t>(next)];
      if (w > N_) continue;
      word_.push_back(next);
      extend(next == repeat ? period : word_.size(), w);
      word_.pop_back();
    }
  }

  const std::vector<int>& deg_;
  int N_;
  std::size_t cap_;
  std::vector<int> word_;
  std::vector<LyndonWord> out_;
};

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int moebius(int n) {
  int result = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

int lowest_degree(const PoincareSeries& a) {
  for (int d = 1; d <= a.bound(); ++d) {
    if (a[d] != 0) return d;
  }
  return 0;
}

int letter_degree(const SpaceExpr& summand) {
  const auto counts = detail::counts_of(summand);
  if (counts.empty()) throw Error(ErrorCode::InvalidInput, "contractible Hilton-Milnor summand");
  int low = bottom_degree(counts.begin()->first);
  for (const auto& [atom, mult] : counts) low = std::min(low, bottom_degree(atom));
  return low;
}

/// (1 - m)^{-L} = sum_j binom(L+j-1, j) m^j, where m starts in degree low.
PoincareSeries inverse_power(const PoincareSeries& m, int low, const BigInt& L) {
  PoincareSeries acc = PoincareSeries::one(m.bound());
  PoincareSeries power = acc;
  BigInt binom = 1;
  for (int j = 1; j * low <= m.bound(); ++j) {
    power = ps_mul(power, m);
    binom = binom * (L + j - 1) / j;
    acc = ps_add(acc, ps_scale(power, binom));
  }
  return acc;
}

}  // namespace

bool is_lyndon(const std::vector<int>& letters) {
  if (letters.empty()) return false;
  for (std::size_t i = 1; i < letters.size(); ++i) {
    std::vector<int> rotation(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.end());
    rotation.insert(rotation.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(i));
    if (!(letters < rotation)) return false;
  }
  return true;
}

std::vector<LyndonWord> lyndon_words(const std::vector<int>& letterDegrees, int N, std::size_t cap) {
  if (letterDegrees.empty()) throw Error(ErrorCode::InvalidInput, "empty alphabet");
  for (int d : letterDegrees) {
    if (d < 1) throw Error(ErrorCode::InvalidInput, "letter degrees must be >= 1");
  }
  return LyndonGenerator(letterDegrees, N, cap).run();
}

BigInt lyndon_count_by_content(const std::vector<int>& content) {
  int total = 0, g = 0;
  for (int c : content) {
    if (c < 0) throw Error(ErrorCode::InvalidInput, "negative letter count");
    total += c;
    g = std::gcd(g, c);
  }
  if (total == 0) return 0;
  BigInt sum = 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    const int mu = moebius(d);
    if (mu == 0) continue;
    BigInt term = factorial(total / d);
    for (int c : content) term /= factorial(c / d);
    sum += mu * term;
  }
  return sum / total;
}

HmExpansion hm_expansion(const std::vector<SpaceExpr>& summands, int N, std::size_t cap) {
  std::vector<int> degrees;
  std::vector<detail::WedgeCounts> letters;
  for (const auto& a : summands) {
    degrees.push_back(letter_degree(a));
    letters.push_back(detail::counts_of(a));
  }
  auto words = lyndon_words(degrees, N, cap);
  std::stable_sort(words.begin(), words.end(),
                   [](const LyndonWord& a, const LyndonWord& b) { return a.weight < b.weight; });

  HmExpansion out;
  std::vector<SpaceExpr> loops;
  for (auto& w : words) {
    detail::WedgeCounts smash = letters[static_cast<std::size_t>(w.letters.front())];
    for (std::size_t i = 1; i < w.letters.size(); ++i) {
      smash = detail::smash(smash, letters[static_cast<std::size_t>(w.letters[i])]);
    }
    HmFactor factor{std::move(w), detail::to_expr(detail::shift(smash, 1))};
    if (!smash.empty()) loops.push_back(factor.loop());
    out.factors.push_back(std::move(factor));
  }
  out.product = canonicalize(SpaceExpr::product(std::move(loops)));
  return out;
}

std::optional<SeriesMismatch> hm_series_mismatch(const std::vector<SpaceExpr>& summands, Characteristic p, int N,
                                                 std::size_t cap) {
  std::vector<SpaceExpr> suspended;
  for (const auto& a : summands) suspended.push_back(SpaceExpr::susp(a));
  const auto lhs = mod_p_series(SpaceExpr::loop(SpaceExpr::wedge(std::move(suspended))), p, N);

  PoincareSeries rhs = PoincareSeries::one(N);
  for (const auto& f : hm_expansion(summands, N, cap).factors) rhs = ps_mul(rhs, mod_p_series(f.loop(), p, N));
  return first_mismatch(lhs, rhs);
}

bool hm_series_check(const std::vector<SpaceExpr>& summands, Characteristic p, int N, std::size_t cap) {
  return !hm_series_mismatch(summands, p, N, cap).has_value();
}

HmSeriesRoutes hm_content_routes(const std::vector<PoincareSeries>& letters, int N) {
  PoincareSeries sum(N);
  std::vector<PoincareSeries> live;
  std::vector<int> low;
  for (const auto& a : letters) {
    if (a[0] != 0) throw Error(ErrorCode::NonzeroConstantTerm, "letter series must be reduced");
    sum = ps_add(sum, a);
    const int d = lowest_degree(a.truncated(N));
    // A letter with no homology below N only enters words that are out of range.
    if (d == 0) continue;
    live.push_back(a.truncated(N));
    low.push_back(d);
  }

  PoincareSeries product = PoincareSeries::one(N);
  std::vector<int> content(live.size(), 0);
  // Walk every content vector of weight <= N.
  auto visit = [&](auto&& self, std::size_t i, int weight, const PoincareSeries& monomial) -> void {
    if (i == live.size()) {
      if (weight == 0) return;
      const BigInt count = lyndon_count_by_content(content);
      if (count != 0) product = ps_mul(product, inverse_power(monomial, weight, count));
      return;
    }
    PoincareSeries m = monomial;
    for (int c = 0; weight + c * low[i] <= N; ++c) {
      content[i] = c;
      self(self, i + 1, weight + c * low[i], m);
      m = ps_mul(m, live[i]);
    }
    content[i] = 0;
  };
  visit(visit, 0, 0, PoincareSeries::one(N));
  return {ps_geometric(sum), product};
}

}  // namespace pdloop
