#include "pdloop/series.hpp"

#include <algorithm>
#include <sstream>

#include "pdloop/error.hpp"

namespace pdloop {

namespace {

void require_bound(int bound) {
  if (bound < 0) throw Error(ErrorCode::InvalidInput, "series bound must be >= 0");
}

}  // namespace

PoincareSeries::PoincareSeries(int bound) {
  require_bound(bound);
  coeffs_.assign(static_cast<std::size_t>(bound) + 1, BigInt(0));
}

PoincareSeries::PoincareSeries(int bound, std::vector<BigInt> coeffs) : PoincareSeries(bound) {
  const auto n = std::min(coeffs.size(), coeffs_.size());
  for (std::size_t d = 0; d < n; ++d) {
    if (coeffs[d] < 0) {
      throw Error(ErrorCode::NegativeCoefficient,
                  "coefficient of t^" + std::to_string(d) + " is " + coeffs[d].str());
    }
    coeffs_[d] = std::move(coeffs[d]);
  }
}

PoincareSeries PoincareSeries::one(int bound) { return monomial(bound, 0); }

PoincareSeries PoincareSeries::monomial(int bound, int degree, const BigInt& coeff) {
  PoincareSeries s(bound);
  if (degree >= 0 && degree <= bound) s.coeffs_[static_cast<std::size_t>(degree)] = coeff;
  return s;
}

bool PoincareSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

PoincareSeries PoincareSeries::truncated(int bound) const {
  require_bound(bound);
  PoincareSeries s(std::min(bound, this->bound()));
  std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
  return s;
}

PoincareSeries PoincareSeries::reduced() const {
  PoincareSeries s = *this;
  s.coeffs_[0] = 0;
  return s;
}

PoincareSeries PoincareSeries::augmented() const {
  PoincareSeries s = *this;
  s.coeffs_[0] = 1;
  return s;
}

std::string PoincareSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    if (coeffs_[d] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (d == 0) {
      out << coeffs_[d];
      continue;
    }
    if (coeffs_[d] != 1) out << coeffs_[d];
    out << "t";
    if (d > 1) out << "^" << d;
  }
  if (first) out << "0";
  out << " + O(t^" << bound() + 1 << ")";
  return out.str();
}

bool operator==(const PoincareSeries& a, const PoincareSeries& b) { return !first_mismatch(a, b); }

std::optional<SeriesMismatch> first_mismatch(const PoincareSeries& a, const PoincareSeries& b) {
  const int n = std::min(a.bound(), b.bound());
  for (int d = 0; d <= n; ++d) {
    if (a[d] != b[d]) return SeriesMismatch{d, a[d], b[d]};
  }
  return std::nullopt;
}

PoincareSeries ps_add(const PoincareSeries& a, const PoincareSeries& b) {
  const int n = std::min(a.bound(), b.bound());
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) c[d] = a[d] + b[d];
  return PoincareSeries(n, std::move(c));
}

PoincareSeries ps_scale(const PoincareSeries& a, const BigInt& factor) {
  if (factor < 0) throw Error(ErrorCode::NegativeCoefficient, "negative scale factor");
  std::vector<BigInt> c(a.coefficients().begin(), a.coefficients().end());
  for (auto& x : c) x *= factor;
  return PoincareSeries(a.bound(), std::move(c));
}

PoincareSeries ps_mul(const PoincareSeries& a, const PoincareSeries& b) {
  const int n = std::min(a.bound(), b.bound());
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
  }
  return PoincareSeries(n, std::move(c));
}

PoincareSeries ps_shift(const PoincareSeries& a, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidInput, "shift must be non-negative");
  std::vector<BigInt> c(static_cast<std::size_t>(a.bound()) + 1);
  for (int d = 0; d + k <= a.bound(); ++d) c[d + k] = a[d];
  return PoincareSeries(a.bound(), std::move(c));
}

PoincareSeries ps_desuspend(const PoincareSeries& a) {
  if (a[0] != 0) throw Error(ErrorCode::NonzeroConstantTerm, "cannot desuspend a series with constant term");
  if (a.bound() == 0) return PoincareSeries(0);
  std::vector<BigInt> c(a.coefficients().begin() + 1, a.coefficients().end());
  return PoincareSeries(a.bound() - 1, std::move(c));
}

PoincareSeries ps_geometric(const PoincareSeries& a) {
  if (a[0] != 0) {
    throw Error(ErrorCode::NonzeroConstantTerm, "geometric series needs a[0] = 0, got " + a[0].str());
  }
  // g = 1 + a g, solved degree by degree.
  const int n = a.bound();
  std::vector<BigInt> g(static_cast<std::size_t>(n) + 1);
  g[0] = 1;
  for (int d = 1; d <= n; ++d) {
    BigInt acc = 0;
    for (int i = 1; i <= d; ++i) {
      if (a[i] != 0) acc += a[i] * g[d - i];
    }
    g[d] = std::move(acc);
  }
  return PoincareSeries(n, std::move(g));
}

PoincareSeries ps_pow(const PoincareSeries& a, const BigInt& exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidInput, "negative exponent");
  PoincareSeries result = PoincareSeries::one(a.bound());
  PoincareSeries base = a;
  BigInt e = exponent;
  while (e > 0) {
    if ((e & 1) != 0) result = ps_mul(result, base);
    e >>= 1;
    if (e > 0) base = ps_mul(base, base);
  }
  return result;
}

PoincareSeries ps_from_rational(const IntPolynomial& numer, const IntPolynomial& denom, int bound) {
  require_bound(bound);
  if (denom.empty() || (denom[0] != 1 && denom[0] != -1)) {
    throw Error(ErrorCode::NonUnitDenominator, "denominator constant term must be +1 or -1");
  }
  const auto coeff = [](const IntPolynomial& p, int i) -> BigInt {
    return i < static_cast<int>(p.size()) ? p[i] : BigInt(0);
  };
  std::vector<BigInt> q(static_cast<std::size_t>(bound) + 1);
  for (int d = 0; d <= bound; ++d) {
    BigInt acc = coeff(numer, d);
    const int top = std::min(d, static_cast<int>(denom.size()) - 1);
    for (int i = 1; i <= top; ++i) acc -= denom[i] * q[d - i];
    q[d] = denom[0] == 1 ? acc : BigInt(-acc);
  }
  for (int d = 0; d <= bound; ++d) {
    if (q[d] < 0) {
      throw Error(ErrorCode::NegativeCoefficient,
                  "rational expansion has coefficient " + q[d].str() + " at t^" + std::to_string(d));
    }
  }
  return PoincareSeries(bound, std::move(q));
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  IntPolynomial c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

IntPolynomial one_minus_product(std::span<const int> degrees) {
  IntPolynomial result{1};
  for (int d : degrees) {
    IntPolynomial factor(static_cast<std::size_t>(d) + 1);
    factor[0] += 1;
    factor[d] -= 1;
    result = poly_mul(result, factor);
  }
  return result;
}

}  // namespace pdloop
