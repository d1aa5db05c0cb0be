#include <doctest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "pdloop/error.hpp"
#include "pdloop/hilton_milnor.hpp"

using namespace pdloop;

namespace {

SpaceExpr P(const char* text) { return canonicalize(parse_space(text)); }

std::string letters(const LyndonWord& w) {
  std::string s;
  for (int l : w.letters) s += std::to_string(l + 1);
  return s;
}

}  // namespace

TEST_CASE("Lyndon counts match the necklace formula") {
  const auto words = lyndon_words({1, 1}, 12);
  std::map<std::size_t, int> by_length;
  for (const auto& w : words) ++by_length[w.length()];
  for (int len = 1; len <= 12; ++len) CHECK(by_length[static_cast<std::size_t>(len)] == oracle::necklace(2, len));
  CHECK(by_length[1] == 2);
  CHECK(by_length[5] == 6);
  for (int len = 1; len <= 7; ++len) {
    int count = 0;
    for (const auto& w : lyndon_words({1, 1, 1}, 7)) count += w.length() == static_cast<std::size_t>(len);
    CHECK(count == oracle::necklace(3, len));
  }
}

TEST_CASE("Lyndon words agree with brute-force enumeration") {
  const auto brute = oracle::brute_lyndon(3, 6);
  auto words = lyndon_words({1, 1, 1}, 6);
  REQUIRE(words.size() == brute.size());
  auto sorted = brute;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(words[i].letters == sorted[i]);
    CHECK(is_lyndon(words[i].letters));
  }
}

TEST_CASE("weighted alphabets") {
  CHECK(lyndon_words({4}, 20).size() == 1);
  const auto w = lyndon_words({2, 3}, 8);
  std::vector<std::string> got;
  for (const auto& x : w) got.push_back(letters(x));
  CHECK(got == std::vector<std::string>{"1", "2", "12", "112", "122"});
  CHECK(w[2].weight == 5);
  CHECK(w[4].weight == 8);
  CHECK_FALSE(is_lyndon({0, 1, 0, 1}));
  CHECK_FALSE(is_lyndon({1, 0}));
  CHECK(is_lyndon({0, 0, 1}));
  CHECK_THROWS_WITH_AS(lyndon_words({1, 1, 1}, 30, 1000), doctest::Contains("ExpansionTooLarge"), Error);
}

TEST_CASE("count by content") {
  CHECK(lyndon_count_by_content({1, 1}) == 1);
  CHECK(lyndon_count_by_content({2, 2}) == 1);  // aabb
  CHECK(lyndon_count_by_content({2, 1}) == 1);
  CHECK(lyndon_count_by_content({3, 3}) == 3);
  CHECK(lyndon_count_by_content({2, 0}) == 0);
  // compare with explicit words on three letters
  std::map<std::vector<int>, int> tally;
  for (const auto& w : lyndon_words({1, 1, 1}, 8)) {
    std::vector<int> c(3, 0);
    for (int l : w.letters) ++c[static_cast<std::size_t>(l)];
    ++tally[c];
  }
  for (const auto& [content, count] : tally) CHECK(lyndon_count_by_content(content) == count);
}

TEST_CASE("hm_expansion") {
  const auto single = hm_expansion({P("P^3(3)")}, 20);
  CHECK(single.product == P("Om P^4(3)"));

  const auto mixed = hm_expansion({P("P^3(3)"), P("P^3(5)")}, 12);
  CHECK(mixed.product == P("Om P^4(3) x Om P^4(5)"));
  CHECK(mixed.factors.size() > 2);

  const auto two = hm_expansion({P("P^3(3)"), P("S^3")}, 12);
  REQUIRE(two.factors.size() >= 3);
  CHECK(two.factors[0].loop() == SpaceExpr::loop(P("P^4(3)")));
  CHECK(two.factors[1].loop() == SpaceExpr::loop(P("S^4")));
  CHECK(two.factors[2].space == P("P^7(3)"));
  CHECK_THROWS_WITH_AS(hm_expansion({P("P^3(2)"), P("P^3(2)")}, 12), doctest::Contains("Mod2SmashUnsupported"), Error);
}

TEST_CASE("raising N only appends factors") {
  const std::vector<SpaceExpr> a{P("P^3(3) v S^2"), P("S^3")};
  const auto small = hm_expansion(a, 10), large = hm_expansion(a, 16);
  REQUIRE(small.factors.size() < large.factors.size());
  for (std::size_t i = 0; i < small.factors.size(); ++i) {
    CHECK(small.factors[i].word == large.factors[i].word);
    CHECK(small.factors[i].space == large.factors[i].space);
  }
}

TEST_CASE("hm_series_check") {
  CHECK(hm_series_check({P("S^1"), P("S^1")}, 2, 10));
  CHECK(hm_series_check({P("P^3(3)")}, 3, 20));
  CHECK(hm_series_check({P("P^3(3)"), P("P^3(5)")}, 3, 12));
  CHECK(hm_series_check({P("P^3(3)"), P("P^3(5)")}, 5, 12));
  CHECK(hm_series_check({P("P^3(9) v S^2"), P("P^4(3)"), P("S^5")}, 3, 16));
  CHECK(hm_series_check({P("P^3(9) v S^2"), P("P^4(3)"), P("S^5")}, kRational, 16));
}

TEST_CASE("content routes") {
  // 1/(1-2t) = prod_k (1/(1-t^k))^{L_k}
  const int N = 10;
  const std::vector<PoincareSeries> two(2, PoincareSeries::monomial(N, 1));
  const auto r = hm_content_routes(two, N);
  CHECK(r.geometric == r.lyndon_product);
  CHECK(r.geometric[10] == 1024);

  PoincareSeries expect = PoincareSeries::one(N);
  for (int k = 1; k <= N; ++k) {
    expect = ps_mul(expect, ps_pow(ps_geometric(PoincareSeries::monomial(N, k)), oracle::necklace(2, k)));
  }
  CHECK(r.lyndon_product == expect);

  // letters with several cells, including one that vanishes
  std::vector<PoincareSeries> mixed{ps_add(PoincareSeries::monomial(20, 2), PoincareSeries::monomial(20, 3)),
                                    PoincareSeries::monomial(20, 4), PoincareSeries(20)};
  const auto m = hm_content_routes(mixed, 20);
  CHECK(m.geometric == m.lyndon_product);
}
