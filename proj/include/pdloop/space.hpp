#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pdloop/arith.hpp"

namespace pdloop {

enum class SpaceKind {
  Point,
  Sphere,      // S^dim
  Moore,       // P^dim(order)
  FibS,        // S^dim{p^r}, fibre of the degree p^r map
  LoopSphere,  // Om S^dim, dim odd
  OpaqueLoop,  // Om <tag>, no internal structure
  Wedge,
  Product,
  Smash,
  Susp,
  Loop,
};

class SpaceExpr;

struct WedgeTerm;

/// Immutable expression tree over spaces. Copies share structure.
///
/// The smart constructors validate atom invariants and nothing else; call
/// canonicalize() to obtain the canonical form used for structural equality.
class SpaceExpr {
 public:
  SpaceExpr();  // the point

  static SpaceExpr point();
  static SpaceExpr sphere(int dim);
  static SpaceExpr moore(int dim, std::uint64_t order);
  static SpaceExpr fib_sphere(int dim, std::uint64_t prime, int exponent);
  static SpaceExpr loop_sphere(int dim);
  static SpaceExpr opaque_loop(std::string tag);
  static SpaceExpr wedge(std::vector<SpaceExpr> children);
  static SpaceExpr wedge(std::vector<WedgeTerm> terms);
  static SpaceExpr product(std::vector<SpaceExpr> children);
  static SpaceExpr smash(SpaceExpr left, SpaceExpr right);
  static SpaceExpr susp(SpaceExpr child);
  static SpaceExpr loop(SpaceExpr child);

  SpaceKind kind() const noexcept;
  bool is_atom() const noexcept;

  int dim() const;                   // Sphere, Moore, FibS, LoopSphere
  std::uint64_t order() const;       // Moore; p^r for FibS
  std::uint64_t prime() const;       // FibS
  int exponent() const;              // FibS
  const std::string& tag() const;    // OpaqueLoop
  const std::vector<SpaceExpr>& children() const;
  /// Wedge only: multiplicity of each child (all 1 unless merged).
  const std::vector<BigInt>& multiplicities() const;
  std::vector<WedgeTerm> terms() const;  // Wedge only

  /// Bottom degree of reduced homology minus one, used only for ordering.
  int connectivity() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const SpaceExpr& a, const SpaceExpr& b);
  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  explicit SpaceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return *node_; }

  std::shared_ptr<const Node> node_;
};

struct WedgeTerm {
  SpaceExpr space;
  BigInt multiplicity = 1;
};

/// Canonical form: Wedge/Product flattened, Point summands and factors
/// removed, equal wedge summands merged, children in the fixed total order,
/// Loop(odd sphere) rewritten as the LoopSphere atom. Idempotent.
SpaceExpr canonicalize(const SpaceExpr& x);

/// Inverse of SpaceExpr::to_string. Throws ParseError with a byte position.
SpaceExpr parse_space(std::string_view text);

/// True for spaces that are suspensions: spheres, Moore spaces, Susp nodes,
/// wedges of suspensions, and smashes with a suspension factor.
bool is_suspension(const SpaceExpr& x);

/// Number of nodes; handy for test generators.
std::size_t expr_size(const SpaceExpr& x);

}  // namespace pdloop
