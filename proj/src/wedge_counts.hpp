#pragma once

#include <map>

#include "pdloop/space.hpp"

namespace pdloop::detail {

/// Multiset of sphere and prime-power Moore summands. Keeps the rewrite
/// engine linear in the number of distinct summands even when the
/// multiplicities grow exponentially.
using WedgeCounts = std::map<SpaceExpr, BigInt>;

void add_to(WedgeCounts& into, const WedgeCounts& from, const BigInt& scale = 1);
void add_atom(WedgeCounts& into, const SpaceExpr& atom, const BigInt& multiplicity = 1);

/// Accepts Point, spheres, Moore spaces (split into prime powers) and wedges
/// of those; anything else is UnsupportedShape.
WedgeCounts counts_of(const SpaceExpr& wedge);
SpaceExpr to_expr(const WedgeCounts& counts);

WedgeCounts shift(const WedgeCounts& counts, int k);
WedgeCounts desuspend(const WedgeCounts& counts);
/// Drops summands with bottom degree above bound; sets dropped if any went.
WedgeCounts truncate(const WedgeCounts& counts, int bound, bool& dropped);
WedgeCounts smash(const WedgeCounts& a, const WedgeCounts& b);

}  // namespace pdloop::detail
