#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdloop {

using BigInt = boost::multiprecision::cpp_int;

/// Coefficient field of a homology computation: a prime p for F_p, or 0 for Q.
using Characteristic = std::uint64_t;
inline constexpr Characteristic kRational = 0;

bool is_prime(std::uint64_t value) noexcept;

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  /// p^r; throws InvalidInput on overflow.
  std::uint64_t value() const;

  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization in increasing prime order. value must be >= 1.
std::vector<PrimePower> factorize(std::uint64_t value);

/// Exact checked power; throws InvalidInput on overflow.
std::uint64_t checked_pow(std::uint64_t base, int exponent);

/// Smallest prime not dividing any of the given values.
std::uint64_t smallest_prime_not_dividing(const std::vector<std::uint64_t>& values);

/// p-primary part of value (p^v where p^v exactly divides value).
std::uint64_t primary_part(std::uint64_t value, std::uint64_t prime);

}  // namespace pdloop
