#pragma once

#include <optional>
#include <vector>

#include "pdloop/evaluate.hpp"
#include "pdloop/series.hpp"
#include "pdloop/space.hpp"

namespace pdloop {

struct LyndonWord {
  std::vector<int> letters;  // 0-based letter indices
  int weight = 0;            // sum of letter degrees

  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const LyndonWord&, const LyndonWord&) = default;
};

inline constexpr std::size_t kDefaultWordCap = 2'000'000;

/// All Lyndon words over letters 0..k-1 (letter i of degree letterDegrees[i])
/// with weight <= N, in length-then-lex order. Throws ExpansionTooLarge when
/// there are more than cap of them.
std::vector<LyndonWord> lyndon_words(const std::vector<int>& letterDegrees, int N,
                                     std::size_t cap = kDefaultWordCap);

bool is_lyndon(const std::vector<int>& letters);

/// Number of Lyndon words using letter i exactly content[i] times.
BigInt lyndon_count_by_content(const std::vector<int>& content);

struct HmFactor {
  LyndonWord word;
  SpaceExpr space;  // Sigma(A_w1 ^ ... ^ A_wk) as a normalized wedge
  SpaceExpr loop() const { return SpaceExpr::loop(space); }
};

/// Om(Sigma A_1 v ... v Sigma A_k) as a product of loops on suspended
/// smashes, one per Lyndon word of weight <= N. Factors are ordered by
/// (smash dimension, word length, lex), so raising N only appends. Factors
/// whose smash is contractible are kept in the list but left out of product.
struct HmExpansion {
  std::vector<HmFactor> factors;
  SpaceExpr product;
};

/// summands are the A_i: wedges of spheres and Moore spaces. A letter's
/// degree is the bottom degree of its reduced homology.
/// Propagates Mod2SmashUnsupported and ExpansionTooLarge.
HmExpansion hm_expansion(const std::vector<SpaceExpr>& summands, int N, std::size_t cap = kDefaultWordCap);

/// Compares mod_p_series of Om(v Sigma A_i) (Bott-Samelson) with the product
/// of the factor series of hm_expansion to degree N.
std::optional<SeriesMismatch> hm_series_mismatch(const std::vector<SpaceExpr>& summands, Characteristic p, int N,
                                                 std::size_t cap = kDefaultWordCap);
bool hm_series_check(const std::vector<SpaceExpr>& summands, Characteristic p, int N,
                     std::size_t cap = kDefaultWordCap);

/// The series form of the expansion grouped by letter content, usable when
/// listing the words is out of reach:
///   geometric(sum a_i) = prod_c geometric(prod_i a_i^{c_i})^{L(c)}
/// with L(c) = lyndon_count_by_content(c). letters are reduced series
/// with zero constant term and a nonzero coefficient somewhere.
struct HmSeriesRoutes {
  PoincareSeries geometric;
  PoincareSeries lyndon_product;
};
HmSeriesRoutes hm_content_routes(const std::vector<PoincareSeries>& letters, int N);

}  // namespace pdloop
