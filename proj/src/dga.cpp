#include "pdloop/dga.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "pdloop/error.hpp"

namespace pdloop {

namespace {

std::uint64_t mod(std::int64_t v, Characteristic p) {
  const auto pp = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((v % pp) + pp) % pp);
}

std::uint64_t inverse(std::uint64_t a, Characteristic p) {
  // Fermat; p is prime and small enough that products fit in 128 bits.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = static_cast<std::uint64_t>(static_cast<unsigned __int128>(result) * base % p);
    base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % p);
    e >>= 1;
  }
  return result;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, Characteristic p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

void accumulate(Chain& into, const Word& w, std::uint64_t c, Characteristic p) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(w, c);
  if (!inserted) {
    it->second = (it->second + c) % p;
    if (it->second == 0) into.erase(it);
  }
}

/// Word counts per degree 0..max, saturating at cap + 1.
std::vector<std::size_t> word_counts(const FreeDGA& D, int max, std::size_t cap) {
  std::vector<std::size_t> count(static_cast<std::size_t>(max) + 1, 0);
  count[0] = 1;
  for (int d = 1; d <= max; ++d) {
    std::size_t total = 0;
    for (const auto& g : D.generators()) {
      if (g.degree <= d) total += count[static_cast<std::size_t>(d - g.degree)];
      if (total > cap) {
        total = cap + 1;
        break;
      }
    }
    count[static_cast<std::size_t>(d)] = total;
  }
  return count;
}

/// Word bases for degrees 0..max. Each word is a shorter word with one
/// letter appended.
std::vector<std::vector<Word>> word_bases(const FreeDGA& D, int max, std::size_t cap) {
  const auto counts = word_counts(D, max, cap);
  for (int d = 0; d <= max; ++d) {
    if (counts[static_cast<std::size_t>(d)] > cap) {
      throw Error(ErrorCode::BasisTooLarge,
                  "more than " + std::to_string(cap) + " words in degree " + std::to_string(d));
    }
  }
  std::vector<std::vector<Word>> bases(static_cast<std::size_t>(max) + 1);
  bases[0].emplace_back();
  for (int d = 1; d <= max; ++d) {
    auto& out = bases[static_cast<std::size_t>(d)];
    out.reserve(counts[static_cast<std::size_t>(d)]);
    for (std::size_t g = 0; g < D.generators().size(); ++g) {
      const int dg = D.generators()[g].degree;
      if (dg > d) continue;
      for (const Word& w : bases[static_cast<std::size_t>(d - dg)]) {
        Word next = w;
        next.push_back(static_cast<char>(g));
        out.push_back(std::move(next));
      }
    }
  }
  return bases;
}

using SparseRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

/// Rank over F_p of a set of sparse rows, eliminating on the leading column.
class RankAccumulator {
 public:
  RankAccumulator(std::size_t columns, Characteristic p) : pivot_(columns, -1), p_(p) {}

  void add(SparseRow row) {
    SparseRow scratch;
    while (!row.empty()) {
      const auto [col, lead] = row.front();
      const int at = pivot_[col];
      if (at < 0) {
        const std::uint64_t inv = inverse(lead, p_);
        for (auto& e : row) e.second = mulmod(e.second, inv, p_);
        pivot_[col] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        return;
      }
      subtract(row, rows_[static_cast<std::size_t>(at)], lead, scratch);
      row.swap(scratch);
    }
  }

  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  // out = row - factor * pivot, where pivot has leading coefficient 1.
  void subtract(const SparseRow& row, const SparseRow& pivot, std::uint64_t factor, SparseRow& out) const {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, (p_ - mulmod(factor, pivot[j].second, p_)) % p_);
        ++j;
      } else {
        const std::uint64_t v = (row[i].second + p_ - mulmod(factor, pivot[j].second, p_)) % p_;
        if (v != 0) out.emplace_back(row[i].first, v);
        ++i;
        ++j;
      }
    }
  }

  std::vector<int> pivot_;
  std::vector<SparseRow> rows_;
  Characteristic p_;
};

}  // namespace

FreeDGA::FreeDGA(Characteristic p, std::vector<Generator> generators,
                 const std::map<std::string, std::vector<DiffTerm>>& differential)
    : p_(p), gens_(std::move(generators)) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (gens_.empty() || gens_.size() > 64) throw Error(ErrorCode::InvalidDga, "need between 1 and 64 generators");
  std::unordered_set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.name.empty() || !seen.insert(g.name).second) {
      throw Error(ErrorCode::InvalidDga, "generator names must be distinct and nonempty");
    }
    if (g.degree < 1) throw Error(ErrorCode::InvalidDga, "generator " + g.name + " has degree < 1");
  }
  for (const auto& g : gens_) {
    if (g.bockstein && !seen.contains(g.bockstein->target)) {
      throw Error(ErrorCode::InvalidDga, "Bockstein target " + g.bockstein->target + " is not a generator");
    }
  }
  diff_.resize(gens_.size());
  for (const auto& [name, terms] : differential) {
    if (!seen.contains(name)) throw Error(ErrorCode::InvalidDga, "differential on unknown generator " + name);
    const std::size_t g = index_of(name);
    for (const auto& term : terms) {
      Word w;
      for (const auto& letter : term.letters) {
        if (!seen.contains(letter)) throw Error(ErrorCode::InvalidDga, "unknown generator " + letter + " in d" + name);
        w.push_back(static_cast<char>(index_of(letter)));
      }
      if (degree(w) != gens_[g].degree - 1) {
        throw Error(ErrorCode::InvalidDga, "d" + name + " does not lower degree by one");
      }
      accumulate(diff_[g], w, mod(term.coeff, p_), p_);
    }
  }
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (!d(diff_[g]).empty()) throw Error(ErrorCode::InvalidDga, "d(d" + gens_[g].name + ") is not zero");
  }
}

std::size_t FreeDGA::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  throw Error(ErrorCode::InvalidDga, "no generator named " + name);
}

int FreeDGA::degree(const Word& w) const {
  int total = 0;
  for (char c : w) total += gens_[static_cast<std::size_t>(c)].degree;
  return total;
}

Chain FreeDGA::d(const Word& w) const {
  Chain out;
  int prefix_degree = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto g = static_cast<std::size_t>(w[i]);
    const bool negate = prefix_degree % 2 != 0;
    for (const auto& [u, c] : diff_[g]) {
      Word next = w.substr(0, i);
      next += u;
      next.append(w, i + 1);
      accumulate(out, next, negate ? (p_ - c) % p_ : c, p_);
    }
    prefix_degree += gens_[g].degree;
  }
  return out;
}

Chain FreeDGA::d(const Chain& c) const {
  Chain out;
  for (const auto& [w, coeff] : c) {
    for (const auto& [u, e] : d(w)) accumulate(out, u, mulmod(coeff, e, p_), p_);
  }
  return out;
}

std::string FreeDGA::render(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (char c : w) out += gens_[static_cast<std::size_t>(c)].name;
  return out;
}

std::string FreeDGA::render(const Chain& c) const {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [w, coeff] : c) {
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += std::to_string(coeff);
    out += render(w);
  }
  return out;
}

FreeDGA ah_model_V(int n, Characteristic p, int r) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "n must be >= 2");
  if (r < 1) throw Error(ErrorCode::InvalidInput, "r must be >= 1");
  std::vector<Generator> gens{
      {"x", 2 * n - 2, std::nullopt},
      {"y", 2 * n - 1, Bockstein{r, "x"}},
      {"z", 4 * n - 2, std::nullopt},
  };
  // [x,y] = xy - (-1)^{|x||y|} yx, and |x| is even.
  std::map<std::string, std::vector<DiffTerm>> diff{{"z", {{1, {"x", "y"}}, {-1, {"y", "x"}}}}};
  return FreeDGA(p, std::move(gens), diff);
}

std::vector<Word> words_of_degree(const FreeDGA& D, int degree, std::size_t cap) {
  if (degree < 0) return {};
  auto bases = word_bases(D, degree, cap);
  auto words = std::move(bases[static_cast<std::size_t>(degree)]);
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return words;
}

DgaHomologyTable dga_homology_table(const FreeDGA& D, int N, std::size_t cap) {
  if (N < 1) throw Error(ErrorCode::InvalidInput, "N must be >= 1");
  const auto bases = word_bases(D, N + 1, cap);
  const Characteristic p = D.p();

  DgaHomologyTable table{{}, {}, PoincareSeries(N)};
  table.word_counts.reserve(bases.size());
  for (const auto& b : bases) table.word_counts.push_back(b.size());
  table.ranks.assign(bases.size(), 0);

  std::unordered_map<Word, std::uint32_t> column;
  for (int d = 1; d <= N + 1; ++d) {
    // Lexicographic columns keep fill-in low for commutator differentials.
    auto target = bases[static_cast<std::size_t>(d - 1)];
    std::sort(target.begin(), target.end());
    column.clear();
    column.reserve(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) column.emplace(target[i], static_cast<std::uint32_t>(i));

    RankAccumulator acc(target.size(), p);
    for (const Word& w : bases[static_cast<std::size_t>(d)]) {
      const Chain dw = D.d(w);
      if (dw.empty()) continue;
      SparseRow row;
      row.reserve(dw.size());
      for (const auto& [u, c] : dw) row.emplace_back(column.at(u), c);
      std::sort(row.begin(), row.end());
      acc.add(std::move(row));
    }
    table.ranks[static_cast<std::size_t>(d)] = acc.rank();
  }

  std::vector<BigInt> dims(static_cast<std::size_t>(N) + 1);
  for (int d = 0; d <= N; ++d) {
    const auto i = static_cast<std::size_t>(d);
    dims[i] = table.word_counts[i] - table.ranks[i] - table.ranks[i + 1];
  }
  table.homology = PoincareSeries(N, std::move(dims));
  return table;
}

PoincareSeries dga_homology_dims(const FreeDGA& D, int N, std::size_t cap) {
  return dga_homology_table(D, N, cap).homology;
}

bool d_squared_vanishes(const FreeDGA& D, int N, std::size_t cap) {
  const auto bases = word_bases(D, N, cap);
  for (const auto& basis : bases) {
    for (const Word& w : basis) {
      if (!D.d(D.d(w)).empty()) return false;
    }
  }
  return true;
}

PoincareSeries poly_dims(int degX, int degY, int N) {
  if (degX < 1 || degY < 1) throw Error(ErrorCode::InvalidInput, "generator degrees must be >= 1");
  std::vector<BigInt> c(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i * degX <= N; ++i) {
    for (int j = 0; i * degX + j * degY <= N; ++j) c[static_cast<std::size_t>(i * degX + j * degY)] += 1;
  }
  return PoincareSeries(N, std::move(c));
}

}  // namespace pdloop
