#pragma once

#include <cstdint>

#include "pdloop/arith.hpp"
#include "pdloop/space.hpp"

namespace pdloop {

/// A wedge of spheres and prime-power Moore spaces produced by a rewrite.
/// When truncated is set, summands whose bottom cell lies above bound were
/// dropped; the mod-p series is exact in degrees <= bound either way.
struct NormalWedge {
  SpaceExpr space;
  bool truncated = false;
  int bound = 0;
};

/// P^dim(order) as the wedge of P^dim(p^r) over the prime factorization.
SpaceExpr moore_split(int dim, std::uint64_t order);

/// Smash of two wedges of spheres and Moore spaces, distributed over the
/// wedges. Same-prime Moore pairs go to P^{a+b}(p^e) v P^{a+b-1}(p^e) with
/// e the smaller exponent; distinct primes give a point. Throws
/// Mod2SmashUnsupported when p^e = 2.
SpaceExpr smash_normalize(const SpaceExpr& x, const SpaceExpr& y);

/// Sigma x rewritten as a wedge of spheres and Moore spaces up to bound.
/// Handles wedges and products of atoms, nested suspensions and smashes, and
/// loops on suspensions (James splitting). OpaqueLoop is UnsupportedShape.
NormalWedge suspend_normalize(const SpaceExpr& x, int bound);

/// Localization at a prime (or kRational): Moore orders keep only their
/// p-primary part, coprime Moore spaces and S^d{q^s} with q != p collapse.
SpaceExpr localize(const SpaceExpr& x, Characteristic at);

/// Lowest degree with nonzero reduced integral homology, for a sphere or
/// Moore space atom.
int bottom_degree(const SpaceExpr& atom);

}  // namespace pdloop
