#include "pdloop/space.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "pdloop/error.hpp"

namespace pdloop {

namespace {

constexpr int kPointConnectivity = std::numeric_limits<int>::max() / 4;

bool is_tag_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

bool is_reserved_tag(std::string_view tag) {
  return tag == "Sigma" || tag == "Om" || tag == "v" || tag == "x" || tag == "S" || tag == "P";
}

int kind_rank(SpaceKind k) { return static_cast<int>(k); }

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

}  // namespace

struct SpaceExpr::Node {
  SpaceKind kind = SpaceKind::Point;
  int dim = 0;
  std::uint64_t order = 0;
  std::uint64_t prime = 0;
  int exponent = 0;
  std::string tag;
  std::vector<SpaceExpr> children;
  std::vector<BigInt> multiplicities;
  int connectivity = kPointConnectivity;
};

SpaceExpr::SpaceExpr() : SpaceExpr(point()) {}

SpaceExpr SpaceExpr::point() {
  static const auto shared = std::make_shared<const Node>();
  return SpaceExpr(shared);
}

SpaceExpr SpaceExpr::sphere(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidAtom, "sphere dimension must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Sphere;
  n->dim = dim;
  n->connectivity = dim - 1;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::moore(int dim, std::uint64_t order) {
  if (dim < 3) throw Error(ErrorCode::DimTooLow, "Moore space P^" + std::to_string(dim) + " must have dim >= 3");
  if (order < 2) throw Error(ErrorCode::InvalidAtom, "Moore space order must be >= 2");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Moore;
  n->dim = dim;
  n->order = order;
  n->connectivity = dim - 2;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::fib_sphere(int dim, std::uint64_t prime, int exponent) {
  if (dim < 3 || dim % 2 == 0) {
    throw Error(ErrorCode::InvalidAtom, "S^" + std::to_string(dim) + "{p^r} needs an odd dimension >= 3");
  }
  if (!is_prime(prime)) throw Error(ErrorCode::NotPrime, std::to_string(prime) + " is not prime");
  if (exponent < 1) throw Error(ErrorCode::InvalidAtom, "exponent must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::FibS;
  n->dim = dim;
  n->prime = prime;
  n->exponent = exponent;
  n->order = checked_pow(prime, exponent);
  n->connectivity = dim - 2;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::loop_sphere(int dim) {
  if (dim < 3 || dim % 2 == 0) {
    throw Error(ErrorCode::InvalidAtom, "Om S^" + std::to_string(dim) + " atom needs an odd dimension >= 3");
  }
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::LoopSphere;
  n->dim = dim;
  n->connectivity = dim - 2;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::opaque_loop(std::string tag) {
  if (tag.empty() || std::isalpha(static_cast<unsigned char>(tag[0])) == 0 ||
      !std::all_of(tag.begin(), tag.end(), is_tag_char) || is_reserved_tag(tag)) {
    throw Error(ErrorCode::InvalidAtom, "invalid opaque loop tag '" + tag + "'");
  }
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::OpaqueLoop;
  n->tag = std::move(tag);
  n->connectivity = 0;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::wedge(std::vector<SpaceExpr> children) {
  std::vector<WedgeTerm> terms;
  terms.reserve(children.size());
  for (auto& c : children) terms.push_back({std::move(c), 1});
  return wedge(std::move(terms));
}

SpaceExpr SpaceExpr::wedge(std::vector<WedgeTerm> terms) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Wedge;
  for (auto& t : terms) {
    if (t.multiplicity < 1) throw Error(ErrorCode::InvalidAtom, "wedge multiplicity must be >= 1");
    n->connectivity = std::min(n->connectivity, t.space.connectivity());
    n->children.push_back(std::move(t.space));
    n->multiplicities.push_back(std::move(t.multiplicity));
  }
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::product(std::vector<SpaceExpr> children) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Product;
  for (const auto& c : children) n->connectivity = std::min(n->connectivity, c.connectivity());
  n->children = std::move(children);
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::smash(SpaceExpr left, SpaceExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Smash;
  n->connectivity = std::min(kPointConnectivity, left.connectivity() + right.connectivity() + 1);
  n->children = {std::move(left), std::move(right)};
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::susp(SpaceExpr child) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Susp;
  n->connectivity = std::min(kPointConnectivity, child.connectivity() + 1);
  n->children = {std::move(child)};
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::loop(SpaceExpr child) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Loop;
  const int c = child.connectivity();
  n->connectivity = c >= kPointConnectivity ? c : std::max(0, c - 1);
  n->children = {std::move(child)};
  return SpaceExpr(std::move(n));
}

SpaceKind SpaceExpr::kind() const noexcept { return node().kind; }

bool SpaceExpr::is_atom() const noexcept {
  switch (kind()) {
    case SpaceKind::Wedge:
    case SpaceKind::Product:
    case SpaceKind::Smash:
    case SpaceKind::Susp:
    case SpaceKind::Loop: return false;
    default: return true;
  }
}

int SpaceExpr::dim() const { return node().dim; }
std::uint64_t SpaceExpr::order() const { return node().order; }
std::uint64_t SpaceExpr::prime() const { return node().prime; }
int SpaceExpr::exponent() const { return node().exponent; }
const std::string& SpaceExpr::tag() const { return node().tag; }
const std::vector<SpaceExpr>& SpaceExpr::children() const { return node().children; }
const std::vector<BigInt>& SpaceExpr::multiplicities() const { return node().multiplicities; }
int SpaceExpr::connectivity() const { return node().connectivity; }

std::vector<WedgeTerm> SpaceExpr::terms() const {
  std::vector<WedgeTerm> out;
  for (std::size_t i = 0; i < children().size(); ++i) out.push_back({children()[i], multiplicities()[i]});
  return out;
}

std::strong_ordering operator<=>(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.connectivity() <=> b.connectivity(); c != 0) return c;
  // Atoms sort ahead of composites of equal connectivity.
  if (auto c = (!a.is_atom()) <=> (!b.is_atom()); c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = kind_rank(a.kind()) <=> kind_rank(b.kind()); c != 0) return c;
  switch (a.kind()) {
    case SpaceKind::Moore: {
      if (auto c = smallest_prime_factor(a.order()) <=> smallest_prime_factor(b.order()); c != 0) return c;
      return b.order() <=> a.order();
    }
    case SpaceKind::FibS: {
      if (auto c = a.prime() <=> b.prime(); c != 0) return c;
      return b.exponent() <=> a.exponent();
    }
    case SpaceKind::OpaqueLoop: return a.tag() <=> b.tag();
    default: break;
  }
  const auto& ac = a.children();
  const auto& bc = b.children();
  const auto n = std::min(ac.size(), bc.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  if (auto c = ac.size() <=> bc.size(); c != 0) return c;
  const auto& am = a.multiplicities();
  const auto& bm = b.multiplicities();
  for (std::size_t i = 0; i < am.size() && i < bm.size(); ++i) {
    if (am[i] != bm[i]) return am[i] < bm[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

bool needs_parens(const SpaceExpr& x) {
  return x.kind() == SpaceKind::Wedge || x.kind() == SpaceKind::Product || x.kind() == SpaceKind::Smash;
}

std::string wrapped(const SpaceExpr& x) {
  return needs_parens(x) ? "(" + x.to_string() + ")" : x.to_string();
}

}  // namespace

std::string SpaceExpr::to_string() const {
  switch (kind()) {
    case SpaceKind::Point: return "*";
    case SpaceKind::Sphere: return "S^" + std::to_string(dim());
    case SpaceKind::Moore: return "P^" + std::to_string(dim()) + "(" + std::to_string(order()) + ")";
    case SpaceKind::FibS: return "S^" + std::to_string(dim()) + "{" + std::to_string(order()) + "}";
    case SpaceKind::LoopSphere: return "Om S^" + std::to_string(dim());
    case SpaceKind::OpaqueLoop: return "Om " + tag();
    case SpaceKind::Wedge: {
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i > 0) out += " v ";
        if (multiplicities()[i] != 1) out += multiplicities()[i].str() + "*";
        out += wrapped(children()[i]);
      }
      return out;
    }
    case SpaceKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i > 0) out += " x ";
        out += wrapped(children()[i]);
      }
      return out;
    }
    case SpaceKind::Smash: return wrapped(children()[0]) + " ^ " + wrapped(children()[1]);
    case SpaceKind::Susp: return "Sigma " + wrapped(children()[0]);
    case SpaceKind::Loop: return "Om " + wrapped(children()[0]);
  }
  return "?";
}

namespace {

void collect_wedge(const SpaceExpr& x, const BigInt& scale, std::vector<WedgeTerm>& out) {
  for (std::size_t i = 0; i < x.children().size(); ++i) {
    const SpaceExpr c = canonicalize(x.children()[i]);
    const BigInt m = scale * x.multiplicities()[i];
    if (c.kind() == SpaceKind::Point) continue;
    if (c.kind() == SpaceKind::Wedge) {
      collect_wedge(c, m, out);
    } else {
      out.push_back({c, m});
    }
  }
}

void collect_product(const SpaceExpr& x, std::vector<SpaceExpr>& out) {
  for (const auto& child : x.children()) {
    const SpaceExpr c = canonicalize(child);
    if (c.kind() == SpaceKind::Point) continue;
    if (c.kind() == SpaceKind::Product) {
      out.insert(out.end(), c.children().begin(), c.children().end());
    } else {
      out.push_back(c);
    }
  }
}

}  // namespace

SpaceExpr canonicalize(const SpaceExpr& x) {
  switch (x.kind()) {
    case SpaceKind::Wedge: {
      std::vector<WedgeTerm> terms;
      collect_wedge(x, 1, terms);
      std::stable_sort(terms.begin(), terms.end(),
                       [](const WedgeTerm& a, const WedgeTerm& b) { return a.space < b.space; });
      std::vector<WedgeTerm> merged;
      for (auto& t : terms) {
        if (!merged.empty() && merged.back().space == t.space) {
          merged.back().multiplicity += t.multiplicity;
        } else {
          merged.push_back(std::move(t));
        }
      }
      if (merged.empty()) return SpaceExpr::point();
      if (merged.size() == 1 && merged[0].multiplicity == 1) return merged[0].space;
      return SpaceExpr::wedge(std::move(merged));
    }
    case SpaceKind::Product: {
      std::vector<SpaceExpr> factors;
      collect_product(x, factors);
      std::stable_sort(factors.begin(), factors.end());
      if (factors.empty()) return SpaceExpr::point();
      if (factors.size() == 1) return factors[0];
      return SpaceExpr::product(std::move(factors));
    }
    case SpaceKind::Smash: {
      SpaceExpr l = canonicalize(x.children()[0]);
      SpaceExpr r = canonicalize(x.children()[1]);
      if (l.kind() == SpaceKind::Point || r.kind() == SpaceKind::Point) return SpaceExpr::point();
      if (r < l) std::swap(l, r);
      return SpaceExpr::smash(std::move(l), std::move(r));
    }
    case SpaceKind::Susp: {
      SpaceExpr c = canonicalize(x.children()[0]);
      if (c.kind() == SpaceKind::Point) return c;
      return SpaceExpr::susp(std::move(c));
    }
    case SpaceKind::Loop: {
      SpaceExpr c = canonicalize(x.children()[0]);
      if (c.kind() == SpaceKind::Point) return c;
      if (c.kind() == SpaceKind::Sphere && c.dim() >= 3 && c.dim() % 2 == 1) return SpaceExpr::loop_sphere(c.dim());
      return SpaceExpr::loop(std::move(c));
    }
    default: return x;
  }
}

bool is_suspension(const SpaceExpr& x) {
  switch (x.kind()) {
    case SpaceKind::Point:
    case SpaceKind::Sphere:
    case SpaceKind::Moore:
    case SpaceKind::Susp: return true;
    case SpaceKind::Wedge:
      return std::all_of(x.children().begin(), x.children().end(), is_suspension);
    case SpaceKind::Smash:
      return is_suspension(x.children()[0]) || is_suspension(x.children()[1]);
    default: return false;
  }
}

std::size_t expr_size(const SpaceExpr& x) {
  std::size_t n = 1;
  for (const auto& c : x.children()) n += expr_size(c);
  return n;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpaceExpr parse() {
    SpaceExpr e = parse_wedge();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // An operator letter ('v' or 'x') standing alone as a token.
  bool accept_operator(char op) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != op) return false;
    if (pos_ + 1 < text_.size() && is_tag_char(text_[pos_ + 1])) return false;
    ++pos_;
    return true;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && is_tag_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::uint64_t parse_uint() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer overflow");
      v = v * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return v;
  }

  int parse_dim() {
    const auto v = parse_uint();
    if (v > 100000) fail("dimension too large");
    return static_cast<int>(v);
  }

  SpaceExpr parse_wedge() {
    std::vector<WedgeTerm> terms;
    do {
      BigInt mult = 1;
      if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
        mult = BigInt(std::string(text_.substr(start, pos_ - start)));
        expect('*');
        if (mult < 1) fail("multiplicity must be positive");
      }
      terms.push_back({parse_product(), mult});
    } while (accept_operator('v'));
    if (terms.size() == 1 && terms[0].multiplicity == 1) return terms[0].space;
    return SpaceExpr::wedge(std::move(terms));
  }

  SpaceExpr parse_product() {
    std::vector<SpaceExpr> factors{parse_smash()};
    while (accept_operator('x')) factors.push_back(parse_smash());
    if (factors.size() == 1) return factors[0];
    return SpaceExpr::product(std::move(factors));
  }

  SpaceExpr parse_smash() {
    SpaceExpr left = parse_unary();
    while (accept('^')) left = SpaceExpr::smash(left, parse_unary());
    return left;
  }

  SpaceExpr parse_unary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      SpaceExpr inner = parse_wedge();
      expect(')');
      return inner;
    }
    if (c == '*') {
      ++pos_;
      return SpaceExpr::point();
    }
    const std::string_view word = peek_word();
    if (word == "Sigma") {
      pos_ += word.size();
      return SpaceExpr::susp(parse_unary());
    }
    if (word == "Om") {
      pos_ += word.size();
      const std::string_view next = peek_word();
      const bool atom_follows = (next == "S" || next == "P") && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^';
      if (!next.empty() && next != "Sigma" && next != "Om" && !atom_follows &&
          std::isalpha(static_cast<unsigned char>(next[0])) != 0) {
        pos_ += next.size();
        return SpaceExpr::opaque_loop(std::string(next));
      }
      SpaceExpr inner = parse_unary();
      if (inner.kind() == SpaceKind::Sphere && inner.dim() >= 3 && inner.dim() % 2 == 1) {
        return SpaceExpr::loop_sphere(inner.dim());
      }
      return SpaceExpr::loop(inner);
    }
    if (c == 'S' || c == 'P') {
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '^') fail("expected '^' after atom letter");
      ++pos_;
      const int d = parse_dim();
      if (c == 'P') {
        expect('(');
        const auto q = parse_uint();
        expect(')');
        return SpaceExpr::moore(d, q);
      }
      if (pos_ < text_.size() && text_[pos_] == '{') {
        ++pos_;
        const auto q = parse_uint();
        expect('}');
        const auto f = q >= 2 ? factorize(q) : std::vector<PrimePower>{};
        if (f.size() != 1) fail("S^d{q} needs a prime power q");
        return SpaceExpr::fib_sphere(d, f[0].prime, f[0].exponent);
      }
      return SpaceExpr::sphere(d);
    }
    fail("expected a space");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SpaceExpr parse_space(std::string_view text) { return Parser(text).parse(); }

}  // namespace pdloop
