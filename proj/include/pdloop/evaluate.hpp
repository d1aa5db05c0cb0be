#pragma once

#include <map>
#include <string>

#include "pdloop/series.hpp"
#include "pdloop/space.hpp"

namespace pdloop {

/// Series for OpaqueLoop atoms, keyed by tag and coefficient field. A
/// binding only needs to cover the bound actually requested; a shorter one
/// shortens the result.
class OpaqueBindings {
 public:
  void bind(const std::string& tag, Characteristic field, PoincareSeries series);
  const PoincareSeries* find(const std::string& tag, Characteristic field) const;
  bool empty() const noexcept { return table_.empty(); }

 private:
  std::map<std::pair<std::string, Characteristic>, PoincareSeries> table_;
};

/// Unreduced Poincare series of H_*(x; F_p) (or Q when p == kRational) in
/// degrees <= bound.
///
/// Atoms follow their known homology: S^d{p^r} is Lambda(a)(x)F_p[b] at p and
/// trivial elsewhere, Om S^d is a polynomial algebra on a class of degree
/// d-1. Wedge, product, smash and suspension use the reduced-series rules;
/// loops on suspensions use Bott-Samelson, loops on products split.
/// Throws UnboundOpaqueLoop and UnsupportedLoopShape.
PoincareSeries mod_p_series(const SpaceExpr& x, Characteristic p, int bound,
                            const OpaqueBindings& bindings = {});

}  // namespace pdloop
