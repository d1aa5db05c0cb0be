#include <doctest.h>

#include "oracles.hpp"
#include "pdloop/dga.hpp"
#include "pdloop/error.hpp"

using namespace pdloop;

namespace {

PoincareSeries S(int N, std::vector<int> c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return PoincareSeries(N, std::move(b));
}

}  // namespace

TEST_CASE("ah_model_V") {
  const auto D = ah_model_V(2, 3, 1);
  REQUIRE(D.generators().size() == 3);
  CHECK(D.p() == 3);
  CHECK(D.generators()[0].degree == 2);
  CHECK(D.generators()[1].degree == 3);
  CHECK(D.generators()[2].degree == 6);
  CHECK(D.render(D.differential(2)) == "xy + 2yx");
  CHECK(D.differential(0).empty());
  CHECK(D.d(D.differential(2)).empty());
  REQUIRE(D.generators()[1].bockstein.has_value());
  CHECK(D.generators()[1].bockstein->target == "x");

  const auto E = ah_model_V(3, 5, 2);
  CHECK(E.generators()[0].degree == 4);
  CHECK(E.generators()[1].degree == 5);
  CHECK(E.generators()[2].degree == 10);
  CHECK(E.generators()[1].bockstein->r == 2);
}

TEST_CASE("derivation with Koszul signs") {
  const auto D = ah_model_V(2, 5, 1);
  // |x| even: d(xz) = x dz, d(zx) = dz x
  const Word xz{0, 2}, zx{2, 0}, yz{1, 2};
  CHECK(D.render(D.d(xz)) == "xxy + 4xyx");
  CHECK(D.render(D.d(zx)) == "xyx + 4yxx");
  // |y| odd: d(yz) = -y dz
  CHECK(D.render(D.d(yz)) == "4yxy + yyx");
}

TEST_CASE("construction checks") {
  using Diff = std::map<std::string, std::vector<DiffTerm>>;
  const std::vector<Generator> gens{{"a", 1, {}}, {"b", 2, {}}};
  CHECK_THROWS_WITH_AS(FreeDGA(3, gens, Diff{{"b", {{1, {"c"}}}}}), doctest::Contains("InvalidDga"), Error);
  CHECK_THROWS_WITH_AS(FreeDGA(3, gens, Diff{{"b", {{1, {"b"}}}}}), doctest::Contains("lower degree"), Error);
  CHECK_THROWS_WITH_AS(FreeDGA(4, gens, Diff{}), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_AS(FreeDGA(3, {{"a", 1, {}}, {"a", 2, {}}}, Diff{}), Error);
  // d(b) = aa and d(c) = ab give d(d(c)) = -aaa
  const std::vector<Generator> g3{{"a", 1, {}}, {"b", 3, {}}, {"c", 5, {}}};
  CHECK_THROWS_WITH_AS(FreeDGA(3, g3, Diff{{"b", {{1, {"a", "a"}}}}, {"c", {{1, {"a", "b"}}}}}),
                       doctest::Contains("d(dc)"), Error);
  // with |a| odd, d(b) = aa squares to zero
  CHECK_NOTHROW(FreeDGA(3, g3, Diff{{"b", {{1, {"a", "a"}}}}}));
}

TEST_CASE("homology of the V model matches Z/p[x,y]") {
  CHECK(dga_homology_dims(ah_model_V(2, 3, 1), 8) == S(8, {1, 0, 1, 1, 1, 1, 2, 1, 2}));
  CHECK(dga_homology_dims(ah_model_V(3, 3, 1), 12) == S(12, {1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1}));
  for (int n = 2; n <= 5; ++n) {
    for (Characteristic p : {3, 5, 7}) {
      for (int r : {1, 3}) {
        CAPTURE(n);
        CAPTURE(p);
        CHECK(dga_homology_dims(ah_model_V(n, p, r), 20) == oracle::count_monomials(2 * n - 2, 2 * n - 1, 20));
      }
    }
  }
}

TEST_CASE("zero differential gives the whole tensor algebra") {
  const FreeDGA D(5, {{"a", 2, {}}, {"b", 3, {}}, {"c", 3, {}}}, {});
  CHECK(dga_homology_dims(D, 16) == oracle::count_words({2, 3, 3}, 16));
}

TEST_CASE("an acyclic model") {
  // T(a, b; db = a) with |a| = 2: homology is F_p in degree 0
  const FreeDGA D(3, {{"a", 2, {}}, {"b", 3, {}}}, {{"b", {{1, {"a"}}}}});
  CHECK(dga_homology_dims(D, 15) == PoincareSeries::one(15));
}

TEST_CASE("rank-nullity and d^2 on the word basis") {
  for (int n = 2; n <= 3; ++n) {
    const auto D = ah_model_V(n, 3, 1);
    const int N = 16;
    const auto table = dga_homology_table(D, N);
    for (int d = 0; d <= N; ++d) {
      const auto i = static_cast<std::size_t>(d);
      CHECK(table.word_counts[i] == words_of_degree(D, d).size());
      CHECK(table.ranks[i] <= table.word_counts[i]);
      const std::size_t kernel = table.word_counts[i] - table.ranks[i];
      CHECK(kernel >= table.ranks[i + 1]);
      CHECK(table.homology[d] == kernel - table.ranks[i + 1]);
    }
    CHECK(d_squared_vanishes(D, N));
  }
}

TEST_CASE("word bases") {
  const auto D = ah_model_V(2, 3, 1);
  const auto w6 = words_of_degree(D, 6);
  REQUIRE(w6.size() == 3);  // length-then-lex order
  CHECK(D.render(w6[0]) == "z");
  CHECK(D.render(w6[1]) == "yy");
  CHECK(D.render(w6[2]) == "xxx");
  CHECK(oracle::count_words({2, 3, 6}, 12)[12] == words_of_degree(D, 12).size());
}

TEST_CASE("basis cap") {
  CHECK_THROWS_WITH_AS(dga_homology_dims(ah_model_V(2, 3, 1), 30, 1000), doctest::Contains("BasisTooLarge"), Error);
}

TEST_CASE("poly_dims") {
  CHECK(poly_dims(2, 3, 6) == S(6, {1, 0, 1, 1, 1, 1, 2}));
  CHECK(poly_dims(2, 3, 0) == PoincareSeries::one(0));
  CHECK(poly_dims(4, 5, 9) == S(9, {1, 0, 0, 0, 1, 1, 0, 0, 1, 1}));
  for (int a = 1; a <= 6; ++a) {
    for (int b = 1; b <= 6; ++b) CHECK(poly_dims(a, b, 30) == oracle::count_monomials(a, b, 30));
  }
}
