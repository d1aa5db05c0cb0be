#pragma once

// Seeded random expressions for the rewrite-soundness checks. Primes come
// from {2,3,5,7}, dimensions stay <= 12. Powers of 2 used where Moore spaces
// may end up smashed together have exponent >= 2, since the smash rule does
// not cover order 2.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pdloop/arith.hpp"
#include "pdloop/space.hpp"

namespace testgen {

using pdloop::SpaceExpr;

class RandomSpaces {
 public:
  explicit RandomSpaces(std::uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }

  std::uint64_t prime() {
    static constexpr std::uint64_t primes[] = {2, 3, 5, 7};
    return primes[pick(0, 3)];
  }

  /// A prime power; 2 only with exponent >= 2 unless allow_two.
  std::uint64_t prime_power(bool allow_two = false) {
    const std::uint64_t p = prime();
    const int r = p == 2 ? pick(allow_two ? 1 : 2, 3) : pick(1, 2);
    return pdloop::checked_pow(p, r);
  }

  /// Order for a Moore space: a prime power or a product of two coprime ones.
  std::uint64_t order(bool allow_two = false) {
    std::uint64_t q = prime_power(allow_two);
    if (coin()) {
      const std::uint64_t extra = prime_power(allow_two);
      if (std::gcd(q, extra) == 1) q *= extra;
    }
    return q;
  }

  SpaceExpr wedge_atom(int minDim = 2) {
    if (coin()) return SpaceExpr::sphere(pick(minDim, 12));
    return SpaceExpr::moore(pick(std::max(3, minDim), 12), order());
  }

  SpaceExpr wedge_of_atoms(int maxTerms = 3, int minDim = 2) {
    std::vector<SpaceExpr> terms;
    const int k = pick(1, maxTerms);
    for (int i = 0; i < k; ++i) terms.push_back(wedge_atom(minDim));
    return SpaceExpr::wedge(std::move(terms));
  }

  int odd_dim() { return 2 * pick(1, 5) + 1; }

  SpaceExpr loop_atom() {
    if (coin()) return SpaceExpr::loop_sphere(odd_dim());
    const std::uint64_t p = prime();
    return SpaceExpr::fib_sphere(odd_dim(), p, p == 2 ? pick(2, 3) : pick(1, 2));
  }

  /// Something suspend_normalize accepts: products and wedges of atoms,
  /// loop atoms, and loops on wedges of suspensions.
  SpaceExpr suspendable(int depth = 2) {
    const int choice = pick(0, depth > 0 ? 4 : 2);
    switch (choice) {
      case 0: return wedge_atom();
      case 1: return loop_atom();
      case 2: return SpaceExpr::loop(wedge_of_atoms(2, 4));
      case 3: {
        std::vector<SpaceExpr> fs;
        const int k = pick(2, 3);
        for (int i = 0; i < k; ++i) fs.push_back(suspendable(depth - 1));
        return SpaceExpr::product(std::move(fs));
      }
      default: {
        std::vector<SpaceExpr> ws;
        const int k = pick(2, 3);
        for (int i = 0; i < k; ++i) ws.push_back(suspendable(depth - 1));
        return SpaceExpr::wedge(std::move(ws));
      }
    }
  }

  /// General expression for canonicalization and localization checks.
  SpaceExpr any(int depth = 3) {
    const int choice = pick(0, depth > 0 ? 7 : 2);
    switch (choice) {
      case 0: return wedge_atom();
      case 1: return loop_atom();
      case 2: return SpaceExpr::point();
      case 3: return SpaceExpr::susp(any(depth - 1));
      case 4: return SpaceExpr::smash(wedge_of_atoms(2), any(depth - 1));
      case 5: return SpaceExpr::loop(wedge_of_atoms(2, 3));
      case 6: {
        std::vector<SpaceExpr> fs;
        const int k = pick(2, 3);
        for (int i = 0; i < k; ++i) fs.push_back(any(depth - 1));
        return SpaceExpr::product(std::move(fs));
      }
      default: {
        std::vector<SpaceExpr> ws;
        const int k = pick(2, 3);
        for (int i = 0; i < k; ++i) ws.push_back(any(depth - 1));
        return SpaceExpr::wedge(std::move(ws));
      }
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), rng_); }

 private:
  std::mt19937_64 rng_;
};

/// Every prime dividing a Moore order or carried by an S^d{p^r} atom.
inline void collect_primes(const SpaceExpr& x, std::set<std::uint64_t>& out) {
  switch (x.kind()) {
    case pdloop::SpaceKind::Moore:
      for (const auto& f : pdloop::factorize(x.order())) out.insert(f.prime);
      return;
    case pdloop::SpaceKind::FibS: out.insert(x.prime()); return;
    default: break;
  }
  if (!x.is_atom()) {
    for (const auto& c : x.children()) collect_primes(c, out);
  }
}

/// Primes to test a rewrite at: those in the expressions, one control
/// prime, and 0 for Q.
inline std::vector<std::uint64_t> test_fields(const std::vector<SpaceExpr>& xs) {
  std::set<std::uint64_t> primes;
  for (const auto& x : xs) collect_primes(x, primes);
  std::vector<std::uint64_t> out(primes.begin(), primes.end());
  out.push_back(pdloop::smallest_prime_not_dividing(std::vector<std::uint64_t>(primes.begin(), primes.end())));
  out.push_back(pdloop::kRational);
  return out;
}

}  // namespace testgen
