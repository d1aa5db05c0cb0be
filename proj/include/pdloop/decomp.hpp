#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdloop/arith.hpp"
#include "pdloop/evaluate.hpp"
#include "pdloop/series.hpp"
#include "pdloop/space.hpp"

namespace pdloop {

/// Torsion of H^{2n}(M; Z) for a (2n-2)-connected (4n-1)-dimensional
/// Poincare duality complex M.
struct TorsionInput {
  int n = 2;
  std::vector<PrimePower> odd;   // odd primes
  std::vector<PrimePower> even;  // powers of 2, exponent >= 2
  int freeRank = 0;              // free summands; only 0 is handled

  friend bool operator==(const TorsionInput&, const TorsionInput&) = default;
};

/// Same multiset, sorted. Results depend only on this.
TorsionInput canonical_input(TorsionInput in);

/// Throws InvalidInput (or NotPrime / EvenExponentOne) when the invariants
/// fail. allow_even selects the mixed 2-torsion mode, which also needs at
/// least one odd prime power.
void validate_input(const TorsionInput& in, bool allow_even);

struct SkeletonData {
  std::uint64_t m = 1;                // lcm of the odd prime powers
  std::vector<PrimePower> mFactors;   // one per distinct odd prime, maximal exponent
  SpaceExpr A;                        // leftover odd Moore spaces, desuspended
  std::vector<PrimePower> evenParts;  // 2-primary summands of the skeleton
  SpaceExpr skeleton;                 // M_{2n}
};

SkeletonData skeleton_decomposition(const TorsionInput& in);

struct Certificate {
  Characteristic prime = kRational;  // kRational for Q
  std::string route;
  bool pass = false;
  int bound = 0;
  std::optional<SeriesMismatch> mismatch;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// fibre -> total -> base, with the attaching data kept as a label only.
struct FibrationRecord {
  SpaceExpr fibre;        // symbolic form
  std::optional<SpaceExpr> fibreNormal;  // rewritten wedge, absent when kept symbolic
  std::string total;
  std::string base;
  std::string map;

  friend bool operator==(const FibrationRecord&, const FibrationRecord&) = default;
};

struct DecompositionResult {
  std::string subject;      // e.g. "Omega M"
  TorsionInput input;       // canonical
  int bound = 0;
  SpaceExpr loopFactors;    // canonical product
  SpaceExpr complement;     // W (normal wedge, or symbolic in the 2-torsion case)
  bool complementTruncated = false;
  bool complementSymbolic = false;
  std::optional<FibrationRecord> fibration;
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;

  bool verified() const;
  const Certificate* first_failure() const;

  friend bool operator==(const DecompositionResult&, const DecompositionResult&) = default;
};

/// Series of Om V at p: Z/p[x, y] with |x| = 2n-2, |y| = 2n-1 when p | m,
/// otherwise (and rationally) that of Om S^{4n-1}.
PoincareSeries omega_V_series(int n, std::uint64_t m, Characteristic p, int N);

/// Om V ~ prod_j S^{2n-1}{p_j^r_j} x Om S^{4n-1}.
DecompositionResult loop_V_decomposition(int n, const std::vector<PrimePower>& mFactors, int N = 40);

/// Om M ~ Om V x Om W, W = (Sigma Om V ^ A) v Sigma A.
DecompositionResult loop_M_decomposition(const TorsionInput& in, int N = 40);

/// Om(M_{2n} v S^{4n-1}) ~ Om M x Om((P^{4n-1}(m) ^ Om M) v P^{4n-1}(m)).
DecompositionResult loop_skeleton_wedge_decomposition(const TorsionInput& in, int N = 40);

/// Om M ~ Om V' x Om((Sigma Om V' ^ A) v Sigma A) with Om V' left opaque.
/// Without 2-torsion this is loop_M_decomposition.
DecompositionResult two_torsion_decomposition(const TorsionInput& in, int N = 40);

/// Om tau_r(S^{2n}) ~ S^{2n-1}{2^r} x Om S^{4n-1} for (n, r) = (2, >= 3) or
/// (4, >= 4). HypothesisNotMet otherwise.
DecompositionResult sphere_bundle_decomposition(int n, int r, int N = 40);

}  // namespace pdloop
