#include <doctest.h>

#include "oracles.hpp"
#include "pdloop/decomp.hpp"
#include "pdloop/error.hpp"
#include "pdloop/normalize.hpp"

using namespace pdloop;

namespace {

SpaceExpr P(const char* text) { return canonicalize(parse_space(text)); }

TorsionInput odd(int n, std::vector<PrimePower> t) { return TorsionInput{n, std::move(t), {}, 0}; }

void check_all_pass(const DecompositionResult& r) {
  for (const auto& c : r.certificates) {
    CAPTURE(c.prime);
    CAPTURE(c.route);
    CHECK(c.pass);
  }
  CHECK(r.verified());
}

bool has_field(const DecompositionResult& r, Characteristic p) {
  for (const auto& c : r.certificates) {
    if (c.prime == p) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("skeleton_decomposition") {
  const auto a = skeleton_decomposition(odd(2, {{3, 2}, {5, 1}, {3, 1}}));
  CHECK(a.m == 45);
  CHECK(a.A == P("P^3(3)"));
  CHECK(a.skeleton == P("P^4(9) v P^4(5) v P^4(3)"));
  CHECK(a.mFactors == std::vector<PrimePower>{{3, 2}, {5, 1}});

  const auto b = skeleton_decomposition(odd(3, {{7, 1}}));
  CHECK(b.m == 7);
  CHECK(b.A == SpaceExpr::point());

  const auto c = skeleton_decomposition(odd(2, {{3, 1}, {3, 1}}));
  CHECK(c.m == 3);
  CHECK(c.A == P("P^3(3)"));

  const auto d = skeleton_decomposition(TorsionInput{2, {{3, 1}}, {{2, 2}}, 0});
  CHECK(d.m == 3);
  CHECK(d.evenParts == std::vector<PrimePower>{{2, 2}});
  CHECK(d.skeleton == P("P^4(4) v P^4(3)"));
}

TEST_CASE("input validation") {
  CHECK_THROWS_WITH_AS(loop_M_decomposition(odd(1, {{3, 1}})), doctest::Contains("InvalidInput"), Error);
  CHECK_THROWS_WITH_AS(loop_M_decomposition(odd(2, {{9, 1}})), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_AS(loop_M_decomposition(odd(2, {})), Error);
  TorsionInput free{2, {{3, 1}}, {}, 1};
  CHECK_THROWS_WITH_AS(loop_M_decomposition(free), doctest::Contains("free summands"), Error);
  CHECK_THROWS_WITH_AS(loop_M_decomposition(TorsionInput{2, {{3, 1}}, {{2, 2}}, 0}), doctest::Contains("InvalidInput"),
                       Error);
  CHECK_THROWS_WITH_AS(two_torsion_decomposition(TorsionInput{2, {{3, 1}}, {{2, 1}}, 0}),
                       doctest::Contains("EvenExponentOne"), Error);
  CHECK_THROWS_AS(two_torsion_decomposition(TorsionInput{2, {}, {{2, 2}}, 0}), Error);
  CHECK_THROWS_WITH_AS(loop_M_decomposition(odd(3, {{7, 1}}), 9), doctest::Contains("4n-2"), Error);
}

TEST_CASE("loop_V_decomposition") {
  const auto a = loop_V_decomposition(2, {{3, 2}, {5, 1}});
  CHECK(a.loopFactors == P("S^3{9} x S^3{5} x Om S^7"));
  CHECK(a.loopFactors.to_string() == "S^3{9} x S^3{5} x Om S^7");
  check_all_pass(a);
  CHECK(has_field(a, 3));
  CHECK(has_field(a, 5));
  CHECK(has_field(a, 2));
  CHECK(has_field(a, kRational));

  const auto b = loop_V_decomposition(3, {{7, 1}}, 30);
  CHECK(b.loopFactors == P("S^5{7} x Om S^11"));
  check_all_pass(b);
  // (1+t^5)/((1-t^4)(1-t^10)) = 1/((1-t^4)(1-t^5)) at 7
  CHECK(mod_p_series(b.loopFactors, 7, 30) == oracle::count_monomials(4, 5, 30));

  CHECK(loop_V_decomposition(2, {{3, 4}}).loopFactors == P("S^3{81} x Om S^7"));
  CHECK_THROWS_AS(loop_V_decomposition(2, {{3, 1}, {3, 2}}), Error);
}

TEST_CASE("loop_M_decomposition: M = V") {
  const auto r = loop_M_decomposition(odd(3, {{7, 1}}), 30);
  CHECK(r.loopFactors.to_string() == "S^5{7} x Om S^11");
  CHECK(r.complement == SpaceExpr::point());
  REQUIRE(r.fibration.has_value());
  CHECK(r.fibration->fibre == SpaceExpr::point());
  CHECK(r.fibration->map == "[gamma,f]+f");
  check_all_pass(r);
}

TEST_CASE("loop_M_decomposition: leftover torsion") {
  const auto r = loop_M_decomposition(odd(2, {{3, 1}, {3, 1}}), 20);
  check_all_pass(r);
  CHECK(r.complementTruncated);
  // low part of W: Sigma A = P^4(3), then Sigma S^3{3} ^ P^3(3) and Sigma Om S^7 ^ P^3(3)
  const auto W = r.complement;
  REQUIRE(W.kind() == SpaceKind::Wedge);
  std::vector<std::string> low;
  for (const auto& t : W.terms()) {
    if (t.space.dim() <= 10) low.push_back((t.multiplicity == 1 ? "" : t.multiplicity.str() + "*") + t.space.to_string());
  }
  CHECK(low == std::vector<std::string>{"P^4(3)", "P^6(3)", "P^7(3)", "P^8(3)", "P^9(3)", "2*P^10(3)"});
  // the W series equals the symbolic fibre series at every field
  for (Characteristic p : {Characteristic{2}, Characteristic{3}, kRational}) {
    CHECK(mod_p_series(r.fibration->fibre, p, 20) == mod_p_series(W, p, 20));
  }
  CHECK(r.loopFactors == canonicalize(SpaceExpr::product(std::vector<SpaceExpr>{
                             P("S^3{3} x Om S^7"), SpaceExpr::loop(W)})));
}

TEST_CASE("rigidity") {
  const auto a = loop_M_decomposition(odd(2, {{3, 2}, {5, 1}, {3, 1}}), 24);
  const auto b = loop_M_decomposition(odd(2, {{3, 1}, {5, 1}, {3, 2}}), 24);
  const auto c = loop_M_decomposition(odd(2, {{5, 1}, {3, 2}, {3, 1}}), 24);
  CHECK(a == b);
  CHECK(a == c);
  CHECK_FALSE(a == loop_M_decomposition(odd(2, {{3, 2}, {5, 1}, {3, 2}}), 24));
}

TEST_CASE("loop_skeleton_wedge_decomposition") {
  for (const auto& in : {odd(3, {{7, 1}}), odd(2, {{3, 1}, {3, 1}})}) {
    const auto r = loop_skeleton_wedge_decomposition(in, in.n == 3 ? 30 : 20);
    check_all_pass(r);
    REQUIRE(r.fibration.has_value());
    CHECK(r.fibration->map == "[G,Gamma]+G");
    CHECK(r.fibration->base == "M");
  }
  const auto r = loop_skeleton_wedge_decomposition(odd(3, {{7, 1}}), 30);
  CHECK(r.subject == "Omega (M_6 v S^11)");
  // the fibre starts with P^11(7)
  CHECK(r.complement.terms().front().space == P("P^11(7)"));
}

TEST_CASE("two_torsion_decomposition") {
  const auto a = two_torsion_decomposition(TorsionInput{2, {{3, 1}}, {{2, 2}}, 0}, 20);
  CHECK(a.loopFactors == P("Om V'"));
  CHECK(a.complement == SpaceExpr::point());
  check_all_pass(a);

  const auto b = two_torsion_decomposition(TorsionInput{2, {{3, 1}, {3, 1}}, {{2, 2}}, 0}, 20);
  check_all_pass(b);
  CHECK(b.complementSymbolic);
  CHECK(mod_p_series(b.complement, 2, 20) == PoincareSeries::one(20));
  CHECK(has_field(b, 2));
  CHECK(b.loopFactors.to_string() == "Om V' x Om (Sigma P^3(3) v (P^3(3) ^ Sigma Om V'))");

  // without 2-torsion the mixed path is the odd splitting
  const auto in = odd(2, {{3, 2}, {5, 1}, {3, 1}});
  CHECK(two_torsion_decomposition(in, 24) == loop_M_decomposition(in, 24));
}

TEST_CASE("sphere_bundle_decomposition") {
  const auto a = sphere_bundle_decomposition(2, 3);
  CHECK(a.loopFactors.to_string() == "S^3{8} x Om S^7");
  CHECK(a.subject == "Om tau_3(S^4)");
  check_all_pass(a);
  const auto b = sphere_bundle_decomposition(4, 4);
  CHECK(b.loopFactors.to_string() == "S^7{16} x Om S^15");
  check_all_pass(b);
  CHECK_THROWS_WITH_AS(sphere_bundle_decomposition(3, 5), doctest::Contains("HypothesisNotMet"), Error);
  CHECK_THROWS_WITH_AS(sphere_bundle_decomposition(2, 2), doctest::Contains("HypothesisNotMet"), Error);
  CHECK_THROWS_WITH_AS(sphere_bundle_decomposition(4, 3), doctest::Contains("HypothesisNotMet"), Error);
}

TEST_CASE("localization coherence") {
  const auto full = loop_M_decomposition(odd(2, {{3, 2}, {5, 1}, {3, 1}}), 20);
  const auto at3 = loop_M_decomposition(odd(2, {{3, 2}, {3, 1}}), 20);
  const auto at5 = loop_M_decomposition(odd(2, {{5, 1}}), 20);
  CHECK(localize(full.loopFactors, 3) == localize(at3.loopFactors, 3));
  CHECK(localize(full.loopFactors, 5) == localize(at5.loopFactors, 5));
  CHECK(localize(full.complement, 5) == SpaceExpr::point());
  for (Characteristic p : {Characteristic{3}, Characteristic{5}}) {
    const auto& part = p == 3 ? at3 : at5;
    CHECK(mod_p_series(full.loopFactors, p, 20) == mod_p_series(part.loopFactors, p, 20));
  }
}

TEST_CASE("every certificate sees the torsion primes, a control prime and Q") {
  const auto r = loop_M_decomposition(odd(2, {{3, 2}, {5, 1}, {3, 1}}), 24);
  CHECK(has_field(r, 3));
  CHECK(has_field(r, 5));
  CHECK(has_field(r, 2));
  CHECK(has_field(r, kRational));
  CHECK(r.bound == 24);
  for (const auto& c : r.certificates) CHECK(c.bound == 24);
}
