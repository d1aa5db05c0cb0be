#include "pdloop/normalize.hpp"

#include <algorithm>

#include "pdloop/error.hpp"
#include "wedge_counts.hpp"

namespace pdloop {

int bottom_degree(const SpaceExpr& atom) {
  switch (atom.kind()) {
    case SpaceKind::Sphere: return atom.dim();
    case SpaceKind::Moore: return atom.dim() - 1;
    default: throw Error(ErrorCode::UnsupportedShape, "bottom degree needs a sphere or Moore space");
  }
}

namespace detail {

void add_atom(WedgeCounts& into, const SpaceExpr& atom, const BigInt& multiplicity) {
  if (multiplicity == 0) return;
  into[atom] += multiplicity;
}

void add_to(WedgeCounts& into, const WedgeCounts& from, const BigInt& scale) {
  for (const auto& [atom, mult] : from) add_atom(into, atom, mult * scale);
}

namespace {

void collect(const SpaceExpr& x, const BigInt& scale, WedgeCounts& out) {
  switch (x.kind()) {
    case SpaceKind::Point: return;
    case SpaceKind::Sphere: add_atom(out, x, scale); return;
    case SpaceKind::Moore:
      for (const auto& pp : factorize(x.order())) add_atom(out, SpaceExpr::moore(x.dim(), pp.value()), scale);
      return;
    case SpaceKind::Wedge:
      for (std::size_t i = 0; i < x.children().size(); ++i) {
        collect(x.children()[i], scale * x.multiplicities()[i], out);
      }
      return;
    default:
      throw Error(ErrorCode::UnsupportedShape, "expected a wedge of spheres and Moore spaces, got " + x.to_string());
  }
}

}  // namespace

WedgeCounts counts_of(const SpaceExpr& wedge) {
  WedgeCounts out;
  collect(wedge, 1, out);
  return out;
}

SpaceExpr to_expr(const WedgeCounts& counts) {
  std::vector<WedgeTerm> terms;
  for (const auto& [atom, mult] : counts) terms.push_back({atom, mult});
  return canonicalize(SpaceExpr::wedge(std::move(terms)));
}

namespace {

SpaceExpr with_dim(const SpaceExpr& atom, int dim) {
  return atom.kind() == SpaceKind::Sphere ? SpaceExpr::sphere(dim) : SpaceExpr::moore(dim, atom.order());
}

}  // namespace

WedgeCounts shift(const WedgeCounts& counts, int k) {
  WedgeCounts out;
  for (const auto& [atom, mult] : counts) add_atom(out, with_dim(atom, atom.dim() + k), mult);
  return out;
}

WedgeCounts desuspend(const WedgeCounts& counts) {
  WedgeCounts out;
  for (const auto& [atom, mult] : counts) {
    const int floor = atom.kind() == SpaceKind::Sphere ? 2 : 4;
    if (atom.dim() < floor) {
      throw Error(ErrorCode::UnsupportedShape, "cannot desuspend " + atom.to_string());
    }
    add_atom(out, with_dim(atom, atom.dim() - 1), mult);
  }
  return out;
}

WedgeCounts truncate(const WedgeCounts& counts, int bound, bool& dropped) {
  WedgeCounts out;
  for (const auto& [atom, mult] : counts) {
    if (bottom_degree(atom) <= bound) {
      out.emplace(atom, mult);
    } else {
      dropped = true;
    }
  }
  return out;
}

namespace {

void smash_atoms(const SpaceExpr& a, const SpaceExpr& b, const BigInt& mult, WedgeCounts& out) {
  const int d = a.dim() + b.dim();
  if (a.kind() == SpaceKind::Sphere && b.kind() == SpaceKind::Sphere) {
    add_atom(out, SpaceExpr::sphere(d), mult);
    return;
  }
  if (a.kind() == SpaceKind::Sphere || b.kind() == SpaceKind::Sphere) {
    const SpaceExpr& m = a.kind() == SpaceKind::Moore ? a : b;
    add_atom(out, SpaceExpr::moore(d, m.order()), mult);
    return;
  }
  const auto fa = factorize(a.order());
  const auto fb = factorize(b.order());
  if (fa[0].prime != fb[0].prime) return;  // contractible
  const PrimePower low{fa[0].prime, std::min(fa[0].exponent, fb[0].exponent)};
  const auto q = low.value();
  if (q == 2) {
    throw Error(ErrorCode::Mod2SmashUnsupported, a.to_string() + " ^ " + b.to_string() + " has minimal order 2");
  }
  add_atom(out, SpaceExpr::moore(d, q), mult);
  add_atom(out, SpaceExpr::moore(d - 1, q), mult);
}

}  // namespace

WedgeCounts smash(const WedgeCounts& a, const WedgeCounts& b) {
  WedgeCounts out;
  for (const auto& [x, mx] : a) {
    for (const auto& [y, my] : b) smash_atoms(x, y, mx * my, out);
  }
  return out;
}

}  // namespace detail

using detail::WedgeCounts;

SpaceExpr moore_split(int dim, std::uint64_t order) {
  if (dim < 3) throw Error(ErrorCode::DimTooLow, "Moore space P^" + std::to_string(dim) + " needs dim >= 3");
  if (order < 2) throw Error(ErrorCode::InvalidAtom, "Moore space order must be >= 2");
  return detail::to_expr(detail::counts_of(SpaceExpr::moore(dim, order)));
}

SpaceExpr smash_normalize(const SpaceExpr& x, const SpaceExpr& y) {
  return detail::to_expr(detail::smash(detail::counts_of(canonicalize(x)), detail::counts_of(canonicalize(y))));
}

namespace {

class Suspender {
 public:
  explicit Suspender(int bound) : bound_(bound) {}

  bool truncated() const { return truncated_; }

  // Sigma x as wedge counts, exact in degrees <= bound.
  WedgeCounts sigma(const SpaceExpr& x) {
    switch (x.kind()) {
      case SpaceKind::Point: return {};
      case SpaceKind::Sphere:
      case SpaceKind::Moore: return cut(detail::shift(detail::counts_of(x), 1));
      case SpaceKind::FibS: {
        // Sigma S^{d}{p^r} = v_{k>=1} P^{(d-1)k+2}(p^r).
        WedgeCounts out;
        for (int k = 1; (x.dim() - 1) * k + 1 <= bound_; ++k) {
          detail::add_atom(out, SpaceExpr::moore((x.dim() - 1) * k + 2, x.order()));
        }
        truncated_ = true;
        return out;
      }
      case SpaceKind::LoopSphere: {
        // James: Sigma Om S^{t+1} = v_{k>=1} S^{kt+1}.
        const int t = x.dim() - 1;
        WedgeCounts out;
        for (int k = 1; k * t + 1 <= bound_; ++k) detail::add_atom(out, SpaceExpr::sphere(k * t + 1));
        truncated_ = true;
        return out;
      }
      case SpaceKind::OpaqueLoop:
        throw Error(ErrorCode::UnsupportedShape, "cannot normalize the opaque loop space " + x.to_string());
      case SpaceKind::Wedge: {
        WedgeCounts out;
        for (std::size_t i = 0; i < x.children().size(); ++i) {
          detail::add_to(out, sigma(x.children()[i]), x.multiplicities()[i]);
        }
        return out;
      }
      case SpaceKind::Product: return sigma_product(x.children());
      case SpaceKind::Susp: return cut(detail::shift(sigma(x.children()[0]), 1));
      case SpaceKind::Smash: return sigma_smash(sigma(x.children()[0]), sigma(x.children()[1]));
      case SpaceKind::Loop: return sigma_loop(x.children()[0]);
    }
    return {};
  }

 private:
  WedgeCounts cut(const WedgeCounts& c) { return detail::truncate(c, bound_, truncated_); }

  // Sigma(B ^ C) from Sigma B and Sigma C.
  WedgeCounts sigma_smash(const WedgeCounts& sb, const WedgeCounts& sc) {
    bool ignored = false;
    auto both = detail::truncate(detail::smash(sb, sc), bound_ + 1, ignored);
    truncated_ = truncated_ || ignored;
    return detail::desuspend(both);
  }

  // Sigma(B x C) = Sigma B v Sigma C v Sigma(B ^ C), folded left to right.
  WedgeCounts sigma_product(const std::vector<SpaceExpr>& factors) {
    WedgeCounts acc;
    bool first = true;
    for (const auto& f : factors) {
      WedgeCounts sf = sigma(f);
      if (first) {
        acc = std::move(sf);
        first = false;
        continue;
      }
      WedgeCounts next = acc;
      detail::add_to(next, sf);
      detail::add_to(next, sigma_smash(acc, sf));
      acc = std::move(next);
    }
    return acc;
  }

  // x as a wedge, for x a suspension.
  WedgeCounts wedge_form(const SpaceExpr& x) {
    switch (x.kind()) {
      case SpaceKind::Point:
      case SpaceKind::Sphere:
      case SpaceKind::Moore: return cut(detail::counts_of(x));
      case SpaceKind::Wedge: {
        WedgeCounts out;
        for (std::size_t i = 0; i < x.children().size(); ++i) {
          detail::add_to(out, wedge_form(x.children()[i]), x.multiplicities()[i]);
        }
        return out;
      }
      case SpaceKind::Susp: return sigma(x.children()[0]);
      case SpaceKind::Smash: {
        const auto& a = x.children()[0];
        const auto& b = x.children()[1];
        bool ignored = false;
        if (is_suspension(a) && is_suspension(b)) {
          return cut(detail::smash(wedge_form(a), wedge_form(b)));
        }
        const auto& s = is_suspension(a) ? a : b;
        const auto& other = is_suspension(a) ? b : a;
        if (!is_suspension(s)) break;
        auto raised = detail::truncate(detail::smash(wedge_form(s), sigma(other)), bound_ + 1, ignored);
        truncated_ = truncated_ || ignored;
        return detail::desuspend(raised);
      }
      default: break;
    }
    throw Error(ErrorCode::UnsupportedShape, x.to_string() + " is not a suspension");
  }

  WedgeCounts sigma_loop(const SpaceExpr& inner) {
    if (inner.kind() == SpaceKind::Product) {
      std::vector<SpaceExpr> loops;
      for (const auto& c : inner.children()) loops.push_back(canonicalize(SpaceExpr::loop(c)));
      return sigma_product(loops);
    }
    if (inner.kind() == SpaceKind::Sphere && inner.dim() % 2 == 1 && inner.dim() >= 3) {
      return sigma(SpaceExpr::loop_sphere(inner.dim()));
    }
    if (!is_suspension(inner)) {
      throw Error(ErrorCode::UnsupportedShape, "cannot normalize Sigma Om of " + inner.to_string());
    }
    // James: Sigma Om Sigma X = v_{k>=1} Sigma X^{^k}, with Sigma X = W.
    const WedgeCounts w = wedge_form(inner);
    for (const auto& [atom, mult] : w) {
      if (bottom_degree(atom) < 2) {
        throw Error(ErrorCode::UnsupportedShape, "loop of a non-simply-connected wedge: " + atom.to_string());
      }
    }
    WedgeCounts out;
    WedgeCounts layer = w;
    while (!layer.empty()) {
      detail::add_to(out, layer);
      layer = sigma_smash_layer(layer, w);
    }
    truncated_ = truncated_ || !w.empty();
    return out;
  }

  // Sigma X^{^(k+1)} = desuspension of (Sigma X^{^k}) ^ W.
  WedgeCounts sigma_smash_layer(const WedgeCounts& layer, const WedgeCounts& w) {
    bool ignored = false;
    auto next = detail::truncate(detail::smash(layer, w), bound_ + 1, ignored);
    return detail::desuspend(next);
  }

  int bound_;
  bool truncated_ = false;
};

SpaceExpr localize_rec(const SpaceExpr& x, Characteristic at) {
  switch (x.kind()) {
    case SpaceKind::Moore: {
      const std::uint64_t q = at == kRational ? 1 : primary_part(x.order(), at);
      return q == 1 ? SpaceExpr::point() : SpaceExpr::moore(x.dim(), q);
    }
    case SpaceKind::FibS: return (at != kRational && x.prime() == at) ? x : SpaceExpr::point();
    case SpaceKind::Wedge: {
      std::vector<WedgeTerm> terms;
      for (const auto& t : x.terms()) terms.push_back({localize_rec(t.space, at), t.multiplicity});
      return SpaceExpr::wedge(std::move(terms));
    }
    case SpaceKind::Product: {
      std::vector<SpaceExpr> factors;
      for (const auto& c : x.children()) factors.push_back(localize_rec(c, at));
      return SpaceExpr::product(std::move(factors));
    }
    case SpaceKind::Smash: return SpaceExpr::smash(localize_rec(x.children()[0], at), localize_rec(x.children()[1], at));
    case SpaceKind::Susp: return SpaceExpr::susp(localize_rec(x.children()[0], at));
    case SpaceKind::Loop: return SpaceExpr::loop(localize_rec(x.children()[0], at));
    default: return x;
  }
}

}  // namespace

NormalWedge suspend_normalize(const SpaceExpr& x, int bound) {
  if (bound < 0) throw Error(ErrorCode::InvalidInput, "bound must be >= 0");
  Suspender s(bound);
  auto counts = s.sigma(canonicalize(x));
  return NormalWedge{detail::to_expr(counts), s.truncated(), bound};
}

SpaceExpr localize(const SpaceExpr& x, Characteristic at) {
  if (at != kRational && !is_prime(at)) throw Error(ErrorCode::NotPrime, std::to_string(at) + " is not prime");
  return canonicalize(localize_rec(x, at));
}

}  // namespace pdloop
