#include "pdloop/arith.hpp"

#include <limits>
#include <string>

#include "pdloop/error.hpp"

namespace pdloop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::DimTooLow: return "DimTooLow";
    case ErrorCode::InvalidAtom: return "InvalidAtom";
    case ErrorCode::Mod2SmashUnsupported: return "Mod2SmashUnsupported";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::UnboundOpaqueLoop: return "UnboundOpaqueLoop";
    case ErrorCode::UnsupportedLoopShape: return "UnsupportedLoopShape";
    case ErrorCode::BasisTooLarge: return "BasisTooLarge";
    case ErrorCode::InvalidDga: return "InvalidDga";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenExponentOne: return "EvenExponentOne";
    case ErrorCode::ExpansionTooLarge: return "ExpansionTooLarge";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t value) noexcept {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d <= value / d; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(ErrorCode::InvalidInput,
                  std::to_string(base) + "^" + std::to_string(exponent) + " overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

std::uint64_t PrimePower::value() const { return checked_pow(prime, exponent); }

std::vector<PrimePower> factorize(std::uint64_t value) {
  if (value == 0) throw Error(ErrorCode::InvalidInput, "cannot factorize 0");
  std::vector<PrimePower> factors;
  for (std::uint64_t d = 2; d <= value / d; ++d) {
    if (value % d != 0) continue;
    PrimePower pp{d, 0};
    while (value % d == 0) {
      value /= d;
      ++pp.exponent;
    }
    factors.push_back(pp);
  }
  if (value > 1) factors.push_back({value, 1});
  return factors;
}

std::uint64_t smallest_prime_not_dividing(const std::vector<std::uint64_t>& values) {
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime(p)) continue;
    bool divides = false;
    for (auto v : values) divides = divides || (v % p == 0);
    if (!divides) return p;
  }
}

std::uint64_t primary_part(std::uint64_t value, std::uint64_t prime) {
  std::uint64_t part = 1;
  while (value % prime == 0) {
    value /= prime;
    part *= prime;
  }
  return part;
}

}  // namespace pdloop
