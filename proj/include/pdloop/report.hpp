#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdloop/decomp.hpp"

namespace pdloop {

/// The prime powers of a torsion spec such as "3^2,5,2^2".
struct TorsionSpec {
  std::vector<PrimePower> odd;
  std::vector<PrimePower> even;
};

/// Grammar: item (',' item)*, item = INT | INT '^' INT, spaces allowed
/// around items. Throws ParseError (with position), NotPrime, and
/// EvenExponentOne for 2 or 2^1.
TorsionSpec parse_torsion_spec(std::string_view text);

/// Inverse of parse_torsion_spec for one item: "p" or "p^r".
std::string format_prime_power(const PrimePower& f);

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string subcommand;  // decompose | wedge | ah | hm | tangent
  int n = 2;
  std::string torsion;
  int maxDegree = 40;
  OutputFormat format = OutputFormat::Text;
  bool verify = true;
  int freeRank = 0;
  std::optional<std::uint64_t> p;   // ah, hm
  int r = 1;                        // ah, tangent
  std::vector<std::string> summands;  // hm
};

/// 0: success, 1: bad input, 2: a certificate failed.
struct RunOutcome {
  int exitCode = 0;
  std::string out;
  std::string err;
};

RunOutcome run(const RunConfig& config);

}  // namespace pdloop
