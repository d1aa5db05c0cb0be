#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdloop/series.hpp"

namespace pdloop {

/// beta^r of the generator carrying this record is the named generator.
struct Bockstein {
  int r = 1;
  std::string target;
};

struct Generator {
  std::string name;
  int degree = 1;
  std::optional<Bockstein> bockstein;
};

/// A word is a string of generator indices, one char per letter.
using Word = std::string;
/// Finite F_p-linear combination of words; coefficients in 1..p-1.
using Chain = std::map<Word, std::uint64_t>;

/// A summand of a differential as written by the user: coeff * g1 g2 ... gk.
struct DiffTerm {
  std::int64_t coeff = 1;
  std::vector<std::string> letters;
};

/// Free graded tensor algebra over F_p with a derivation differential.
/// d(ab) = (da)b + (-1)^{|a|} a(db).
class FreeDGA {
 public:
  /// Throws InvalidDga unless names are distinct, degrees positive,
  /// differentials use declared generators and lower degree by one, and
  /// d(d(g)) = 0 for every generator. NotPrime if p is not prime.
  FreeDGA(Characteristic p, std::vector<Generator> generators,
          const std::map<std::string, std::vector<DiffTerm>>& differential);

  Characteristic p() const noexcept { return p_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const Chain& differential(std::size_t generator) const { return diff_.at(generator); }
  std::size_t index_of(const std::string& name) const;

  int degree(const Word& w) const;
  Chain d(const Word& w) const;
  Chain d(const Chain& c) const;

  std::string render(const Word& w) const;
  std::string render(const Chain& c) const;

 private:
  Characteristic p_;
  std::vector<Generator> gens_;
  std::vector<Chain> diff_;
};

/// The three-cell model T(x, y, z; dz = xy - yx) with |x| = 2n-2,
/// |y| = 2n-1, |z| = 4n-2 and beta^r y = x recorded on y.
FreeDGA ah_model_V(int n, Characteristic p, int r);

inline constexpr std::size_t kDefaultBasisCap = 2'000'000;

/// Per-degree data behind dga_homology_dims. rank[d] is the rank of
/// d: degree d -> degree d-1 (rank[0] = 0).
struct DgaHomologyTable {
  std::vector<std::size_t> word_counts;  // degrees 0..N+1
  std::vector<std::size_t> ranks;        // degrees 0..N+1
  PoincareSeries homology;               // degrees 0..N
};

/// Homology of D in degrees <= N by sparse Gaussian elimination over F_p on
/// the word bases. Throws BasisTooLarge when a degree holds more than cap
/// words.
DgaHomologyTable dga_homology_table(const FreeDGA& D, int N, std::size_t cap = kDefaultBasisCap);
PoincareSeries dga_homology_dims(const FreeDGA& D, int N, std::size_t cap = kDefaultBasisCap);

/// All words of the given degree, in length-then-lex order.
std::vector<Word> words_of_degree(const FreeDGA& D, int degree, std::size_t cap = kDefaultBasisCap);

/// True when d(d(w)) = 0 for every word of degree <= N.
bool d_squared_vanishes(const FreeDGA& D, int N, std::size_t cap = kDefaultBasisCap);

/// Number of monomials x^i y^j of degree d in a polynomial algebra with
/// |x| = degX, |y| = degY, for d <= N.
PoincareSeries poly_dims(int degX, int degY, int N);

}  // namespace pdloop
