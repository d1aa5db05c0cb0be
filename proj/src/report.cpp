#include "pdloop/report.hpp"

#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pdloop/dga.hpp"
#include "pdloop/error.hpp"
#include "pdloop/hilton_milnor.hpp"
#include "wedge_counts.hpp"

namespace pdloop {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "pdloop-report/1";

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  TorsionSpec parse() {
    TorsionSpec out;
    skip_spaces();
    if (at_end()) fail("empty torsion spec");
    while (true) {
      const std::size_t start = pos_;
      const std::uint64_t p = number();
      int r = 1;
      if (peek() == '^') {
        ++pos_;
        const std::uint64_t e = number();
        if (e < 1 || e > 64) fail("exponent out of range", start);
        r = static_cast<int>(e);
      }
      if (!is_prime(p)) {
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " at position " + std::to_string(start) +
                                             " is not prime (write prime powers as p^r)");
      }
      if (p == 2 && r == 1) {
        throw Error(ErrorCode::EvenExponentOne, "2^1 at position " + std::to_string(start) +
                                                    ": exponents of 2 must be >= 2");
      }
      (void)checked_pow(p, r);
      (p == 2 ? out.even : out.odd).push_back({p, r});
      skip_spaces();
      if (at_end()) return out;
      if (peek() != ',') fail("expected ','");
      ++pos_;
      skip_spaces();
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_spaces() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(at.value_or(pos_)));
  }

  std::uint64_t number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a decimal integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer too large");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

json big(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(v);
  return v.str();
}

std::string field_name(Characteristic p) { return p == kRational ? "Q" : std::to_string(p); }

json mismatch_json(const std::optional<SeriesMismatch>& m) {
  if (!m) return nullptr;
  return {{"degree", m->degree}, {"lhs", big(m->lhs)}, {"rhs", big(m->rhs)}};
}

json certificate_json(const Certificate& c) {
  return {{"prime", field_name(c.prime)}, {"route", c.route}, {"pass", c.pass},
          {"bound", c.bound}, {"mismatch", mismatch_json(c.mismatch)}};
}

json summands_json(const SpaceExpr& w) {
  json out = json::array();
  if (w.kind() == SpaceKind::Point) return out;
  if (w.kind() != SpaceKind::Wedge) {
    out.push_back({{"space", w.to_string()}, {"multiplicity", 1}});
    return out;
  }
  for (const auto& t : w.terms()) out.push_back({{"space", t.space.to_string()}, {"multiplicity", big(t.multiplicity)}});
  return out;
}

json input_json(const TorsionInput& in) {
  json odd = json::array(), even = json::array();
  for (const auto& f : in.odd) odd.push_back(format_prime_power(f));
  for (const auto& f : in.even) even.push_back(format_prime_power(f));
  return {{"n", in.n}, {"odd", odd}, {"even", even}, {"free_rank", in.freeRank}};
}

std::vector<std::string> factor_strings(const SpaceExpr& product) {
  std::vector<std::string> out;
  if (product.kind() == SpaceKind::Product) {
    for (const auto& c : product.children()) out.push_back(c.to_string());
  } else if (product.kind() != SpaceKind::Point) {
    out.push_back(product.to_string());
  }
  return out;
}

std::string certificate_line(const Certificate& c) {
  std::ostringstream s;
  s << "  " << (c.prime == kRational ? "Q" : "p=" + std::to_string(c.prime)) << "  " << c.route << "  "
    << (c.pass ? "pass" : "FAIL");
  if (c.mismatch) {
    s << " at degree " << c.mismatch->degree << ": " << c.mismatch->lhs << " vs " << c.mismatch->rhs;
  }
  return s.str();
}

std::string failure_message(const Certificate& c) {
  std::ostringstream s;
  s << "certificate failed: " << (c.prime == kRational ? "Q" : "p=" + std::to_string(c.prime)) << " route "
    << c.route;
  if (c.mismatch) {
    s << " first differs in degree " << c.mismatch->degree << ": " << c.mismatch->lhs << " vs "
      << c.mismatch->rhs;
  }
  return s.str() + "\n";
}

/// Shared tail for every command: certificates, exit status, rendering.
RunOutcome finish(const RunConfig& config, json report, std::string text, const std::vector<Certificate>& certs,
                  const std::vector<std::string>& notes) {
  RunOutcome outcome;
  const Certificate* failed = nullptr;
  json table = json::array();
  if (config.verify) {
    text += "certificates (N=" + std::to_string(config.maxDegree) + "):\n";
    for (const auto& c : certs) {
      table.push_back(certificate_json(c));
      text += certificate_line(c) + "\n";
      if (!c.pass && failed == nullptr) failed = &c;
    }
    text += std::string("verified: ") + (failed ? "no" : "yes") + "\n";
  }
  for (const auto& note : notes) text += "note: " + note + "\n";
  report["schema"] = kSchema;
  report["command"] = config.subcommand;
  report["max_degree"] = config.maxDegree;
  report["certificates"] = table;
  report["verified"] = config.verify ? json(failed == nullptr) : json(nullptr);
  report["notes"] = notes;

  outcome.out = config.format == OutputFormat::Json ? report.dump(2) + "\n" : text;
  if (failed != nullptr) {
    outcome.exitCode = 2;
    outcome.err = failure_message(*failed);
  }
  return outcome;
}

TorsionInput torsion_input(const RunConfig& config) {
  const TorsionSpec spec = parse_torsion_spec(config.torsion);
  return TorsionInput{config.n, spec.odd, spec.even, config.freeRank};
}

RunOutcome run_decomposition(const RunConfig& config, const DecompositionResult& r) {
  const std::string line = r.subject + " ~ " + r.loopFactors.to_string();
  std::string text = line + "\n";
  json report;
  report["input"] = input_json(r.input);
  report["subject"] = r.subject;
  report["decomposition"] = r.loopFactors.to_string();
  report["factors"] = factor_strings(r.loopFactors);
  report["complement"] = {{"space", r.complement.to_string()},
                          {"symbolic", r.complementSymbolic},
                          {"summands", r.complementSymbolic ? json::array() : summands_json(r.complement)},
                          {"truncated", r.complementTruncated}};
  if (r.fibration) {
    const auto& f = *r.fibration;
    report["fibration"] = {{"fibre", f.fibre.to_string()},
                           {"fibre_normal", f.fibreNormal ? json(f.fibreNormal->to_string()) : json(nullptr)},
                           {"total", f.total},
                           {"base", f.base},
                           {"map", f.map}};
    text += "fibration: " + f.fibre.to_string() + " -> " + f.total + " -> " + f.base + "  (map " + f.map + ")\n";
  } else {
    report["fibration"] = nullptr;
  }
  if (r.complement.kind() != SpaceKind::Point) {
    text += "W = " + r.complement.to_string() + (r.complementTruncated ? "  (summands above degree " +
                                                                           std::to_string(r.bound + 1) + " dropped)"
                                                                     : "") + "\n";
  }
  return finish(config, std::move(report), std::move(text), r.certificates, r.notes);
}

void require_decomposition_bound(const RunConfig& config) {
  if (config.maxDegree < 4 * config.n - 2) {
    throw Error(ErrorCode::InvalidInput, "--max-degree must be at least 4n-2 = " + std::to_string(4 * config.n - 2));
  }
}

RunOutcome run_ah(const RunConfig& config) {
  const Characteristic p = config.p.value_or(3);
  if (config.maxDegree < 1) throw Error(ErrorCode::InvalidInput, "--max-degree must be >= 1");
  const FreeDGA D = ah_model_V(config.n, p, config.r);
  const PoincareSeries h = dga_homology_dims(D, config.maxDegree);
  const int n = config.n;
  std::string model = "T(x_" + std::to_string(2 * n - 2) + ", y_" + std::to_string(2 * n - 1) + ", z_" +
                      std::to_string(4 * n - 2) + "; dz = " + D.render(D.differential(2)) + ") over F_" +
                      std::to_string(p);
  std::string text = "H_*(Omega V; F_" + std::to_string(p) + ") = " + h.to_string() + "\n";
  text += "model: " + model + "\n";
  json report;
  report["input"] = {{"n", n}, {"p", p}, {"r", config.r}};
  report["model"] = model;
  json dims = json::array();
  for (const auto& c : h.coefficients()) dims.push_back(big(c));
  report["homology_dims"] = dims;
  std::vector<Certificate> certs;
  if (config.verify) {
    const auto oracle = poly_dims(2 * n - 2, 2 * n - 1, config.maxDegree);
    Certificate c{p, "polynomial-oracle", true, config.maxDegree, first_mismatch(h, oracle)};
    c.pass = !c.mismatch;
    certs.push_back(c);
  }
  return finish(config, std::move(report), std::move(text), certs, {});
}

RunOutcome run_hm(const RunConfig& config) {
  if (config.summands.empty()) throw Error(ErrorCode::InvalidInput, "hm needs at least one --summand");
  const int N = config.maxDegree;
  std::vector<SpaceExpr> summands;
  std::vector<std::uint64_t> orders;
  std::vector<SpaceExpr> suspended;
  for (const auto& s : config.summands) {
    summands.push_back(canonicalize(parse_space(s)));
    for (const auto& [atom, mult] : detail::counts_of(summands.back())) {
      if (atom.kind() == SpaceKind::Moore) orders.push_back(atom.order());
    }
    suspended.push_back(SpaceExpr::susp(summands.back()));
  }
  const HmExpansion e = hm_expansion(summands, N);
  const std::string subject = "Om (" + canonicalize(SpaceExpr::wedge(suspended)).to_string() + ")";
  std::string text = subject + " ~ " + e.product.to_string() + "\n";
  json report;
  json in = json::array();
  for (const auto& s : summands) in.push_back(s.to_string());
  report["input"] = {{"summands", in}};
  report["subject"] = subject;
  report["decomposition"] = e.product.to_string();
  report["factors"] = factor_strings(e.product);
  json words = json::array();
  for (const auto& f : e.factors) {
    std::string w;
    for (int l : f.word.letters) w += (w.empty() ? "" : ".") + std::to_string(l + 1);
    words.push_back({{"word", w}, {"weight", f.word.weight}, {"factor", f.loop().to_string()}});
  }
  report["lyndon_factors"] = words;

  std::vector<Characteristic> fields;
  if (config.p) {
    fields.push_back(*config.p);
  } else {
    std::set<std::uint64_t> primes;
    for (auto o : orders) {
      for (const auto& f : factorize(o)) primes.insert(f.prime);
    }
    fields.assign(primes.begin(), primes.end());
    fields.push_back(smallest_prime_not_dividing(orders));
    fields.push_back(kRational);
  }
  std::vector<Certificate> certs;
  if (config.verify) {
    for (Characteristic p : fields) {
      Certificate c{p, "bott-samelson-vs-lyndon", true, N, hm_series_mismatch(summands, p, N)};
      c.pass = !c.mismatch;
      certs.push_back(c);
    }
  }
  return finish(config, std::move(report), std::move(text), certs, {});
}

RunOutcome dispatch(const RunConfig& config) {
  const auto& cmd = config.subcommand;
  if (cmd == "decompose") {
    require_decomposition_bound(config);
    const TorsionInput in = torsion_input(config);
    const auto r = in.even.empty() ? loop_M_decomposition(in, config.maxDegree)
                                   : two_torsion_decomposition(in, config.maxDegree);
    return run_decomposition(config, r);
  }
  if (cmd == "wedge") {
    require_decomposition_bound(config);
    return run_decomposition(config, loop_skeleton_wedge_decomposition(torsion_input(config), config.maxDegree));
  }
  if (cmd == "tangent") {
    require_decomposition_bound(config);
    return run_decomposition(config, sphere_bundle_decomposition(config.n, config.r, config.maxDegree));
  }
  if (cmd == "ah") return run_ah(config);
  if (cmd == "hm") return run_hm(config);
  throw Error(ErrorCode::InvalidInput, "unknown subcommand '" + cmd + "'");
}

}  // namespace

TorsionSpec parse_torsion_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string format_prime_power(const PrimePower& f) {
  return f.exponent == 1 ? std::to_string(f.prime) : std::to_string(f.prime) + "^" + std::to_string(f.exponent);
}

RunOutcome run(const RunConfig& config) {
  try {
    return dispatch(config);
  } catch (const Error& e) {
    return {1, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace pdloop
