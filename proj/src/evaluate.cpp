#include "pdloop/evaluate.hpp"

#include "pdloop/error.hpp"

namespace pdloop {

void OpaqueBindings::bind(const std::string& tag, Characteristic field, PoincareSeries series) {
  table_.insert_or_assign({tag, field}, std::move(series));
}

const PoincareSeries* OpaqueBindings::find(const std::string& tag, Characteristic field) const {
  const auto it = table_.find({tag, field});
  return it == table_.end() ? nullptr : &it->second;
}

namespace {

bool divides(Characteristic p, std::uint64_t order) { return p != kRational && order % p == 0; }

class Evaluator {
 public:
  Evaluator(Characteristic p, const OpaqueBindings& bindings) : p_(p), bindings_(bindings) {}

  PoincareSeries eval(const SpaceExpr& x, int n) {
    switch (x.kind()) {
      case SpaceKind::Point: return PoincareSeries::one(n);
      case SpaceKind::Sphere: return ps_add(PoincareSeries::one(n), PoincareSeries::monomial(n, x.dim()));
      case SpaceKind::Moore: {
        if (!divides(p_, x.order())) return PoincareSeries::one(n);
        auto s = ps_add(PoincareSeries::monomial(n, x.dim() - 1), PoincareSeries::monomial(n, x.dim()));
        return s.augmented();
      }
      case SpaceKind::FibS: {
        if (p_ != x.prime()) return PoincareSeries::one(n);
        IntPolynomial numer(static_cast<std::size_t>(x.dim()) + 1);
        numer[0] = 1;
        numer[x.dim()] = 1;
        const int b = x.dim() - 1;
        return ps_from_rational(numer, one_minus_product(std::span<const int>(&b, 1)), n);
      }
      case SpaceKind::LoopSphere: return polynomial_on(x.dim() - 1, n);
      case SpaceKind::OpaqueLoop: {
        const PoincareSeries* s = bindings_.find(x.tag(), p_);
        if (s == nullptr) {
          throw Error(ErrorCode::UnboundOpaqueLoop,
                      "no series bound for " + x.to_string() + " at " + field_name());
        }
        return s->truncated(n);
      }
      case SpaceKind::Wedge: {
        PoincareSeries acc(n);
        for (std::size_t i = 0; i < x.children().size(); ++i) {
          acc = ps_add(acc, ps_scale(eval(x.children()[i], n).reduced(), x.multiplicities()[i]));
        }
        return acc.augmented();
      }
      case SpaceKind::Product: {
        PoincareSeries acc = PoincareSeries::one(n);
        for (const auto& c : x.children()) acc = ps_mul(acc, eval(c, n));
        return acc;
      }
      case SpaceKind::Smash: return eval_smash(x, n);
      case SpaceKind::Susp: return ps_shift(eval(x.children()[0], n).reduced(), 1).augmented();
      case SpaceKind::Loop: return eval_loop(x.children()[0], n);
    }
    return PoincareSeries::one(n);
  }

 private:
  std::string field_name() const { return p_ == kRational ? "Q" : "p=" + std::to_string(p_); }

  static PoincareSeries polynomial_on(int degree, int n) {
    return ps_geometric(PoincareSeries::monomial(n, degree));
  }

  // A factor whose reduced series vanishes makes the smash acyclic even if
  // the other factor cannot be evaluated at this prime.
  PoincareSeries eval_smash(const SpaceExpr& x, int n) {
    std::optional<PoincareSeries> sides[2];
    std::optional<Error> failure;
    for (int i = 0; i < 2; ++i) {
      try {
        sides[i] = eval(x.children()[static_cast<std::size_t>(i)], n).reduced();
        if (sides[i]->is_zero()) return PoincareSeries::one(n);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnboundOpaqueLoop) throw;
        failure = e;
      }
    }
    if (failure) throw *failure;
    return ps_mul(*sides[0], *sides[1]).augmented();
  }

  PoincareSeries eval_loop(const SpaceExpr& inner, int n) {
    switch (inner.kind()) {
      case SpaceKind::Point: return PoincareSeries::one(n);
      case SpaceKind::Product: {
        PoincareSeries acc = PoincareSeries::one(n);
        for (const auto& c : inner.children()) acc = ps_mul(acc, eval_loop(c, n));
        return acc;
      }
      default: break;
    }
    if (!is_suspension(inner)) {
      throw Error(ErrorCode::UnsupportedLoopShape, "cannot evaluate Om of " + inner.to_string());
    }
    // Bott-Samelson: H_*(Om Sigma A) = T(H~_*(A)).
    const PoincareSeries reduced = eval(inner, n + 1).reduced();
    if (reduced[1] != 0) {
      throw Error(ErrorCode::UnsupportedLoopShape, "Om of a non-simply-connected space " + inner.to_string());
    }
    return ps_geometric(ps_desuspend(reduced));
  }

  Characteristic p_;
  const OpaqueBindings& bindings_;
};

}  // namespace

PoincareSeries mod_p_series(const SpaceExpr& x, Characteristic p, int bound, const OpaqueBindings& bindings) {
  if (p != kRational && !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (bound < 0) throw Error(ErrorCode::InvalidInput, "bound must be >= 0");
  return Evaluator(p, bindings).eval(x, bound);
}

}  // namespace pdloop
