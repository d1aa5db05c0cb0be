#include <iostream>

#include <CLI11.hpp>

#include "pdloop/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Loop space decompositions of (2n-2)-connected (4n-1)-dimensional Poincare duality complexes"};
  app.require_subcommand(1);

  pdloop::RunConfig config;
  std::string format = "text";
  bool noVerify = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-degree", config.maxDegree, "truncation degree N")->capture_default_str();
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--no-verify", noVerify, "skip the series certificates");
  };

  auto* decompose = app.add_subcommand("decompose", "Omega M from the torsion of H^{2n}(M;Z)");
  decompose->add_option("--n", config.n, "M is (2n-2)-connected of dimension 4n-1")->required();
  decompose->add_option("--torsion", config.torsion, "prime powers, e.g. 3^2,5,3 or 3,2^2")->required();
  decompose->add_option("--free-rank", config.freeRank, "free summands in H^{2n}(M;Z)");
  common(decompose);

  auto* wedge = app.add_subcommand("wedge", "Omega (M_{2n} v S^{4n-1})");
  wedge->add_option("--n", config.n)->required();
  wedge->add_option("--torsion", config.torsion)->required();
  wedge->add_option("--free-rank", config.freeRank);
  common(wedge);

  auto* ah = app.add_subcommand("ah", "homology of the Adams-Hilton model of V over F_p");
  ah->add_option("--n", config.n)->required();
  ah->add_option("--p", config.p, "odd prime")->required();
  ah->add_option("--r", config.r, "Bockstein order");
  common(ah);

  auto* hm = app.add_subcommand("hm", "Hilton-Milnor expansion of Om(Sigma A_1 v ... v Sigma A_k)");
  hm->add_option("--summand", config.summands, "a desuspended summand A_i, e.g. 'P^3(3)'")->required();
  hm->add_option("--p", config.p, "check only this prime");
  common(hm);

  auto* tangent = app.add_subcommand("tangent", "Omega of the mod-2^r tangent bundle of S^{2n}");
  tangent->add_option("--n", config.n)->required();
  tangent->add_option("--r", config.r)->required();
  common(tangent);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.format = format == "json" ? pdloop::OutputFormat::Json : pdloop::OutputFormat::Text;
  config.verify = !noVerify;
  const auto outcome = pdloop::run(config);
  std::cout << outcome.out;
  std::cerr << outcome.err;
  return outcome.exitCode;
}
