#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdloop/arith.hpp"

namespace pdloop {

/// Truncated Poincare series: coefficient d is the dimension of the degree-d
/// graded piece, recorded for 0 <= d <= bound. Immutable once built.
class PoincareSeries {
 public:
  /// The zero series.
  explicit PoincareSeries(int bound);
  /// Throws NegativeCoefficient on a negative entry; coefficients beyond
  /// bound are dropped and missing ones are zero.
  PoincareSeries(int bound, std::vector<BigInt> coeffs);

  static PoincareSeries one(int bound);
  static PoincareSeries monomial(int bound, int degree, const BigInt& coeff = 1);

  int bound() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const BigInt& operator[](int degree) const { return coeffs_.at(static_cast<std::size_t>(degree)); }
  std::span<const BigInt> coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  PoincareSeries truncated(int bound) const;
  /// Same series with the constant term cleared.
  PoincareSeries reduced() const;
  /// 1 + (reduced part); used to turn reduced series back into unreduced ones.
  PoincareSeries augmented() const;

  std::string to_string() const;

  /// Coefficientwise comparison on 0..min(bounds).
  friend bool operator==(const PoincareSeries& a, const PoincareSeries& b);

 private:
  std::vector<BigInt> coeffs_;
};

/// Signed integer polynomial, coefficient i multiplies t^i.
using IntPolynomial = std::vector<BigInt>;

struct SeriesMismatch {
  int degree;
  BigInt lhs;
  BigInt rhs;

  friend bool operator==(const SeriesMismatch&, const SeriesMismatch&) = default;
};

/// First degree <= min bound where the two series differ.
std::optional<SeriesMismatch> first_mismatch(const PoincareSeries& a, const PoincareSeries& b);

PoincareSeries ps_add(const PoincareSeries& a, const PoincareSeries& b);
PoincareSeries ps_scale(const PoincareSeries& a, const BigInt& factor);
PoincareSeries ps_mul(const PoincareSeries& a, const PoincareSeries& b);
/// Multiply by t^k, dropping degrees above the bound. k >= 0.
PoincareSeries ps_shift(const PoincareSeries& a, int k);
/// Divide by t: requires a[0] == 0, bound drops by one.
PoincareSeries ps_desuspend(const PoincareSeries& a);
/// sum_{k>=0} a^k. Throws NonzeroConstantTerm if a[0] != 0.
PoincareSeries ps_geometric(const PoincareSeries& a);
/// a^e by repeated squaring; e >= 0.
PoincareSeries ps_pow(const PoincareSeries& a, const BigInt& exponent);
/// Expansion of numer/denom to degree bound. denom[0] must be +-1.
PoincareSeries ps_from_rational(const IntPolynomial& numer, const IntPolynomial& denom, int bound);

/// Convenience for closed forms: product of (1 - t^d) over the given degrees.
IntPolynomial one_minus_product(std::span<const int> degrees);
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace pdloop
