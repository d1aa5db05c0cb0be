#include "pdloop/decomp.hpp"

#include <algorithm>
#include <map>

#include "pdloop/dga.hpp"
#include "pdloop/error.hpp"
#include "pdloop/normalize.hpp"
#include "wedge_counts.hpp"

namespace pdloop {

namespace {

constexpr const char* kOpaqueTag = "V'";
// Extra degrees on opaque bindings: nested loops evaluate their children a
// few degrees past the requested bound.
constexpr int kBindingSlack = 8;

void require_bound(int n, int N) {
  if (N < 4 * n - 2) {
    throw Error(ErrorCode::InvalidInput,
                "max degree " + std::to_string(N) + " is below 4n-2 = " + std::to_string(4 * n - 2));
  }
}

Certificate compare(Characteristic p, std::string route, int N, const PoincareSeries& lhs,
                    const PoincareSeries& rhs) {
  Certificate c{p, std::move(route), true, N, first_mismatch(lhs, rhs)};
  c.pass = !c.mismatch.has_value();
  return c;
}

/// Primes dividing m in increasing order, then the control prime, then Q.
std::vector<Characteristic> fields_for(std::uint64_t m, std::uint64_t control) {
  std::vector<Characteristic> out;
  for (const auto& f : factorize(m)) out.push_back(f.prime);
  out.push_back(control);
  out.push_back(kRational);
  return out;
}

PoincareSeries loop_sphere_series(int n, int N) {
  const int d = 4 * n - 2;
  return ps_from_rational({1}, one_minus_product(std::span<const int>(&d, 1)), N);
}

SpaceExpr omega_V_product(int n, const std::vector<PrimePower>& mFactors) {
  std::vector<SpaceExpr> factors;
  for (const auto& f : mFactors) factors.push_back(SpaceExpr::fib_sphere(2 * n - 1, f.prime, f.exponent));
  factors.push_back(SpaceExpr::loop_sphere(4 * n - 1));
  return canonicalize(SpaceExpr::product(std::move(factors)));
}

std::vector<SpaceExpr> factors_of(const SpaceExpr& product) {
  if (product.kind() == SpaceKind::Product) return product.children();
  if (product.kind() == SpaceKind::Point) return {};
  return {product};
}

SpaceExpr times(const SpaceExpr& a, const SpaceExpr& b) {
  auto fs = factors_of(a);
  for (const auto& f : factors_of(b)) fs.push_back(f);
  return canonicalize(SpaceExpr::product(std::move(fs)));
}

SpaceExpr loop_unless_point(const SpaceExpr& w) {
  return w.kind() == SpaceKind::Point ? SpaceExpr::point() : SpaceExpr::loop(w);
}

/// (Sigma Om ^ A) v Sigma A, symbolically.
SpaceExpr fibre_expr(const SpaceExpr& loops, const SpaceExpr& A) {
  if (A.kind() == SpaceKind::Point) return SpaceExpr::point();
  return canonicalize(SpaceExpr::wedge(std::vector<SpaceExpr>{
      SpaceExpr::smash(SpaceExpr::susp(loops), A), SpaceExpr::susp(A)}));
}

struct NormalForm {
  SpaceExpr space;
  bool truncated = false;
};

/// (Sigma loops ^ B) v Sigma B as a wedge exact through degree limit.
NormalForm smash_suspension(const SpaceExpr& loops, const SpaceExpr& B, int limit) {
  if (B.kind() == SpaceKind::Point) return {SpaceExpr::point(), false};
  const NormalWedge sigma = suspend_normalize(loops, limit);
  const auto b = detail::counts_of(B);
  auto counts = detail::smash(detail::counts_of(sigma.space), b);
  detail::add_to(counts, detail::shift(b, 1));
  bool dropped = false;
  counts = detail::truncate(counts, limit, dropped);
  return {detail::to_expr(counts), sigma.truncated || dropped};
}

std::string skeleton_wedge_name(int n) {
  return "M_" + std::to_string(2 * n) + " v S^" + std::to_string(4 * n - 1);
}

/// Om(M_{2n} v S^{4n-1}) computed by Bott-Samelson against
/// series(Om M) x series(Om W2) at one field.
Certificate skeleton_wedge_certificate(int n, const SpaceExpr& skeleton, const SpaceExpr& omegaM,
                                       const SpaceExpr& W2, Characteristic p, int N,
                                       const OpaqueBindings& bindings = {}) {
  const auto wedge = SpaceExpr::wedge(std::vector<SpaceExpr>{skeleton, SpaceExpr::sphere(4 * n - 1)});
  const auto lhs = mod_p_series(SpaceExpr::loop(wedge), p, N);
  const auto rhs = ps_mul(mod_p_series(omegaM, p, N, bindings), mod_p_series(SpaceExpr::loop(W2), p, N, bindings));
  return compare(p, "skeleton-wedge", N, lhs, rhs);
}

/// The pieces of the odd-torsion splitting.
struct OddSplitting {
  TorsionInput input;
  SkeletonData sk;
  SpaceExpr omegaV;
  SpaceExpr Wsym;
  NormalForm W;
  SpaceExpr omegaM;
};

OddSplitting odd_splitting(const TorsionInput& raw, int N) {
  validate_input(raw, false);
  require_bound(raw.n, N);
  OddSplitting t;
  t.input = canonical_input(raw);
  t.sk = skeleton_decomposition(t.input);
  t.omegaV = omega_V_product(t.input.n, t.sk.mFactors);
  t.Wsym = fibre_expr(t.omegaV, t.sk.A);
  // Om W is exact through N when W is.
  t.W = smash_suspension(t.omegaV, t.sk.A, N + 1);
  t.omegaM = times(t.omegaV, loop_unless_point(t.W.space));
  return t;
}

/// W2 = (P^{4n-1}(m) ^ Om M) v P^{4n-1}(m), with P^{4n-1}(m) ^ X rewritten
/// as P^{4n-2}(m) ^ Sigma X.
NormalForm wedge_fibre(int n, std::uint64_t m, const SpaceExpr& omegaM, int N) {
  return smash_suspension(omegaM, moore_split(4 * n - 2, m), N + 1);
}

SpaceExpr wedge_fibre_expr(int n, std::uint64_t m, const SpaceExpr& omegaM) {
  const auto P = SpaceExpr::moore(4 * n - 1, m);
  return canonicalize(SpaceExpr::wedge(std::vector<SpaceExpr>{SpaceExpr::smash(P, omegaM), P}));
}

const std::string kSeriesNote = "certificates compare mod-p Poincare series; they are necessary conditions, not proofs";

}  // namespace

TorsionInput canonical_input(TorsionInput in) {
  std::sort(in.odd.begin(), in.odd.end());
  std::sort(in.even.begin(), in.even.end());
  return in;
}

void validate_input(const TorsionInput& in, bool allow_even) {
  if (in.n < 2) throw Error(ErrorCode::InvalidInput, "n must be >= 2");
  if (in.freeRank != 0) {
    throw Error(ErrorCode::InvalidInput, "free summands in H^{2n}(M;Z) are not handled (freeRank must be 0)");
  }
  if (in.odd.empty()) throw Error(ErrorCode::InvalidInput, "need at least one odd prime power");
  for (const auto& f : in.odd) {
    if (!is_prime(f.prime)) throw Error(ErrorCode::NotPrime, std::to_string(f.prime) + " is not prime");
    if (f.prime == 2) throw Error(ErrorCode::InvalidInput, "powers of 2 belong to the even torsion");
    if (f.exponent < 1) throw Error(ErrorCode::InvalidInput, "exponents must be >= 1");
    (void)f.value();
  }
  for (const auto& f : in.even) {
    if (f.prime != 2) throw Error(ErrorCode::InvalidInput, "even torsion must be powers of 2");
    if (f.exponent < 2) {
      throw Error(ErrorCode::EvenExponentOne, "2^" + std::to_string(f.exponent) + " is not allowed, exponents of 2 must be >= 2");
    }
    (void)f.value();
  }
  if (!allow_even && !in.even.empty()) {
    throw Error(ErrorCode::InvalidInput, "2-torsion needs the mixed 2-torsion decomposition");
  }
}

SkeletonData skeleton_decomposition(const TorsionInput& raw) {
  validate_input(raw, true);
  const TorsionInput in = canonical_input(raw);
  const int n = in.n;
  std::map<std::uint64_t, std::vector<int>> by_prime;
  for (const auto& f : in.odd) by_prime[f.prime].push_back(f.exponent);

  SkeletonData sk;
  std::vector<SpaceExpr> leftovers, cells;
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.begin(), exps.end());
    const int top = exps.back();
    exps.pop_back();
    sk.mFactors.push_back({p, top});
    sk.m *= checked_pow(p, top);
    cells.push_back(SpaceExpr::moore(2 * n, checked_pow(p, top)));
    for (int r : exps) {
      leftovers.push_back(SpaceExpr::moore(2 * n - 1, checked_pow(p, r)));
      cells.push_back(SpaceExpr::moore(2 * n, checked_pow(p, r)));
    }
  }
  for (const auto& f : in.even) {
    sk.evenParts.push_back(f);
    cells.push_back(SpaceExpr::moore(2 * n, f.value()));
  }
  sk.A = canonicalize(SpaceExpr::wedge(std::move(leftovers)));
  sk.skeleton = canonicalize(SpaceExpr::wedge(std::move(cells)));
  return sk;
}

bool DecompositionResult::verified() const { return first_failure() == nullptr; }

const Certificate* DecompositionResult::first_failure() const {
  for (const auto& c : certificates) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

PoincareSeries omega_V_series(int n, std::uint64_t m, Characteristic p, int N) {
  if (p != kRational && m % p == 0) return poly_dims(2 * n - 2, 2 * n - 1, N);
  return loop_sphere_series(n, N);
}

DecompositionResult loop_V_decomposition(int n, const std::vector<PrimePower>& mFactors, int N) {
  TorsionInput in{n, mFactors, {}, 0};
  validate_input(in, false);
  require_bound(n, N);
  in = canonical_input(in);
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < in.odd.size(); ++i) {
    if (i > 0 && in.odd[i].prime == in.odd[i - 1].prime) {
      throw Error(ErrorCode::InvalidInput, "the factors of m must have distinct primes");
    }
    m *= in.odd[i].value();
  }

  DecompositionResult r;
  r.subject = "Omega V";
  r.input = in;
  r.bound = N;
  r.loopFactors = omega_V_product(n, in.odd);
  r.complement = SpaceExpr::point();
  for (Characteristic p : fields_for(m, smallest_prime_not_dividing({m}))) {
    r.certificates.push_back(
        compare(p, "omega-V", N, mod_p_series(r.loopFactors, p, N), omega_V_series(n, m, p, N)));
  }
  r.notes.push_back(kSeriesNote);
  return r;
}

DecompositionResult loop_M_decomposition(const TorsionInput& raw, int N) {
  const OddSplitting t = odd_splitting(raw, N);
  const int n = t.input.n;
  const std::uint64_t m = t.sk.m;

  DecompositionResult r;
  r.subject = "Omega M";
  r.input = t.input;
  r.bound = N;
  r.loopFactors = t.omegaM;
  r.complement = t.W.space;
  r.complementTruncated = t.W.truncated;
  r.fibration = FibrationRecord{t.Wsym, t.W.space, "M", "V", "[gamma,f]+f"};

  const NormalForm W2 = wedge_fibre(n, m, t.omegaM, N);
  const bool hasA = t.sk.A.kind() != SpaceKind::Point;
  for (Characteristic p : fields_for(m, smallest_prime_not_dividing({m}))) {
    r.certificates.push_back(
        compare(p, "omega-V", N, mod_p_series(t.omegaV, p, N), omega_V_series(n, m, p, N)));
    if (hasA) {
      r.certificates.push_back(
          compare(p, "fibre-normal-form", N, mod_p_series(t.Wsym, p, N), mod_p_series(t.W.space, p, N)));
    }
    r.certificates.push_back(skeleton_wedge_certificate(n, t.sk.skeleton, t.omegaM, W2.space, p, N));
  }
  r.notes.push_back(kSeriesNote);
  return r;
}

DecompositionResult loop_skeleton_wedge_decomposition(const TorsionInput& raw, int N) {
  const OddSplitting t = odd_splitting(raw, N);
  const int n = t.input.n;
  const std::uint64_t m = t.sk.m;
  const NormalForm W2 = wedge_fibre(n, m, t.omegaM, N);
  const SpaceExpr W2sym = wedge_fibre_expr(n, m, t.omegaM);

  DecompositionResult r;
  r.subject = "Omega (" + skeleton_wedge_name(n) + ")";
  r.input = t.input;
  r.bound = N;
  r.loopFactors = times(t.omegaM, loop_unless_point(W2.space));
  r.complement = W2.space;
  r.complementTruncated = W2.truncated;
  r.fibration = FibrationRecord{W2sym, W2.space, skeleton_wedge_name(n), "M", "[G,Gamma]+G"};
  for (Characteristic p : fields_for(m, smallest_prime_not_dividing({m}))) {
    r.certificates.push_back(
        compare(p, "fibre-normal-form", N, mod_p_series(W2sym, p, N), mod_p_series(W2.space, p, N)));
    r.certificates.push_back(skeleton_wedge_certificate(n, t.sk.skeleton, t.omegaM, W2.space, p, N));
  }
  r.notes.push_back(kSeriesNote);
  return r;
}

DecompositionResult two_torsion_decomposition(const TorsionInput& raw, int N) {
  if (raw.even.empty()) return loop_M_decomposition(raw, N);
  validate_input(raw, true);
  require_bound(raw.n, N);
  const TorsionInput in = canonical_input(raw);
  const int n = in.n;
  const SkeletonData sk = skeleton_decomposition(in);
  const std::uint64_t m = sk.m;

  // The odd part alone is an odd-torsion input with the same m and A.
  TorsionInput oddPart = in;
  oddPart.even.clear();
  const OddSplitting odd = odd_splitting(oddPart, N);

  const SpaceExpr omegaVp = SpaceExpr::opaque_loop(kOpaqueTag);
  const SpaceExpr Wp = fibre_expr(omegaVp, sk.A);
  const SpaceExpr omegaM = times(omegaVp, loop_unless_point(Wp));
  const SpaceExpr W2p = wedge_fibre_expr(n, m, omegaM);

  const std::uint64_t control = smallest_prime_not_dividing({2 * m});
  OpaqueBindings bindings;
  for (const auto& f : sk.mFactors) bindings.bind(kOpaqueTag, f.prime, omega_V_series(n, m, f.prime, N + kBindingSlack));
  bindings.bind(kOpaqueTag, control, omega_V_series(n, m, control, N + kBindingSlack));
  bindings.bind(kOpaqueTag, kRational, omega_V_series(n, m, kRational, N + kBindingSlack));

  DecompositionResult r;
  r.subject = "Omega M";
  r.input = in;
  r.bound = N;
  r.loopFactors = omegaM;
  r.complement = Wp;
  r.complementSymbolic = true;
  r.fibration = FibrationRecord{Wp, std::nullopt, "M", "V'", "[gamma,f]+f"};

  std::vector<Characteristic> fields;
  for (const auto& f : sk.mFactors) fields.push_back(f.prime);
  fields.push_back(2);
  fields.push_back(control);
  fields.push_back(kRational);
  for (Characteristic p : fields) {
    if (p == 2) {
      // Only W' is claimed mod 2: A is odd-primary, so every summand dies.
      r.certificates.push_back(compare(p, "mod2-acyclic-fibre", N, mod_p_series(Wp, 2, N), PoincareSeries::one(N)));
      continue;
    }
    r.certificates.push_back(compare(p, "odd-part-consistency", N, mod_p_series(omegaM, p, N, bindings),
                                     mod_p_series(odd.omegaM, p, N)));
    r.certificates.push_back(skeleton_wedge_certificate(n, sk.skeleton, omegaM, W2p, p, N, bindings));
  }
  r.notes.push_back(kSeriesNote);
  r.notes.push_back("mod-2 series of Omega V' is not determined; the p=2 check covers W' only");
  return r;
}

DecompositionResult sphere_bundle_decomposition(int n, int r, int N) {
  if (!((n == 2 && r >= 3) || (n == 4 && r >= 4))) {
    throw Error(ErrorCode::HypothesisNotMet, "no decomposition of Omega tau_" + std::to_string(r) + "(S^" +
                                                 std::to_string(2 * n) + ") for n=" + std::to_string(n) +
                                                 ", r=" + std::to_string(r) +
                                                 "; needs n=2 with r>=3 or n=4 with r>=4");
  }
  require_bound(n, N);
  const SpaceExpr product = canonicalize(SpaceExpr::product(
      std::vector<SpaceExpr>{SpaceExpr::fib_sphere(2 * n - 1, 2, r), SpaceExpr::loop_sphere(4 * n - 1)}));

  DecompositionResult out;
  out.subject = "Om tau_" + std::to_string(r) + "(S^" + std::to_string(2 * n) + ")";
  out.input = TorsionInput{n, {}, {{2, r}}, 0};
  out.bound = N;
  out.loopFactors = product;
  out.complement = SpaceExpr::point();

  const int a = 2 * n - 2, b = 2 * n - 1, c = 4 * n - 2;
  IntPolynomial numer(static_cast<std::size_t>(b) + 1);
  numer[0] = 1;
  numer[static_cast<std::size_t>(b)] = 1;
  const std::vector<int> ac{a, c}, ab{a, b};
  const auto target = ps_from_rational({1}, one_minus_product(ab), N);
  out.certificates.push_back(compare(2, "closed-form", N, ps_from_rational(numer, one_minus_product(ac), N), target));
  out.certificates.push_back(compare(2, "product-series", N, mod_p_series(product, 2, N), target));
  for (Characteristic p : {Characteristic{3}, kRational}) {
    out.certificates.push_back(compare(p, "rational", N, mod_p_series(product, p, N), loop_sphere_series(n, N)));
  }
  out.notes.push_back(kSeriesNote);
  return out;
}

}  // namespace pdloop
