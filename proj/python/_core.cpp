#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdloop/dga.hpp"
#include "pdloop/error.hpp"
#include "pdloop/evaluate.hpp"
#include "pdloop/hilton_milnor.hpp"
#include "pdloop/normalize.hpp"
#include "pdloop/report.hpp"

namespace py = pybind11;
using namespace pdloop;

namespace {

// Coefficients may exceed 64 bits; go through Python's own integer parser.
py::list to_ints(const PoincareSeries& s) {
  py::list out;
  for (const auto& c : s.coefficients()) {
    const std::string digits = c.str();
    out.append(py::reinterpret_steal<py::object>(PyLong_FromString(digits.c_str(), nullptr, 10)));
  }
  return out;
}

Characteristic field(py::object p) { return p.is_none() ? kRational : p.cast<Characteristic>(); }

std::vector<SpaceExpr> parse_all(const std::vector<std::string>& texts) {
  std::vector<SpaceExpr> out;
  for (const auto& t : texts) out.push_back(parse_space(t));
  return out;
}

py::tuple run_json(RunConfig c) {
  c.format = OutputFormat::Json;
  const auto r = run(c);
  return py::make_tuple(r.exitCode, r.out, r.err);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "PdloopError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const Error& err) {
      error(err.what());
    }
  });

  m.def("run_decompose", [](int n, const std::string& torsion, int max_degree, bool verify) {
    RunConfig c;
    c.subcommand = "decompose";
    c.n = n;
    c.torsion = torsion;
    c.maxDegree = max_degree;
    c.verify = verify;
    return run_json(c);
  }, py::arg("n"), py::arg("torsion"), py::arg("max_degree") = 40, py::arg("verify") = true);

  m.def("run_wedge", [](int n, const std::string& torsion, int max_degree) {
    RunConfig c;
    c.subcommand = "wedge";
    c.n = n;
    c.torsion = torsion;
    c.maxDegree = max_degree;
    return run_json(c);
  }, py::arg("n"), py::arg("torsion"), py::arg("max_degree") = 40);

  m.def("run_tangent", [](int n, int r, int max_degree) {
    RunConfig c;
    c.subcommand = "tangent";
    c.n = n;
    c.r = r;
    c.maxDegree = max_degree;
    return run_json(c);
  }, py::arg("n"), py::arg("r"), py::arg("max_degree") = 40);

  m.def("canonicalize", [](const std::string& x) { return canonicalize(parse_space(x)).to_string(); });
  m.def("mod_p_series", [](const std::string& x, py::object p, int bound) {
    return to_ints(mod_p_series(parse_space(x), field(p), bound));
  }, py::arg("space"), py::arg("p"), py::arg("bound"));
  m.def("moore_split", [](int dim, std::uint64_t order) { return moore_split(dim, order).to_string(); });
  m.def("smash_normalize", [](const std::string& a, const std::string& b) {
    return smash_normalize(parse_space(a), parse_space(b)).to_string();
  });
  m.def("suspend_normalize", [](const std::string& x, int bound) {
    const auto w = suspend_normalize(parse_space(x), bound);
    return py::make_tuple(w.space.to_string(), w.truncated);
  });
  m.def("localize", [](const std::string& x, py::object p) { return localize(parse_space(x), field(p)).to_string(); });

  m.def("ah_homology_dims", [](int n, Characteristic p, int r, int bound) {
    return to_ints(dga_homology_dims(ah_model_V(n, p, r), bound));
  }, py::arg("n"), py::arg("p"), py::arg("r") = 1, py::arg("bound") = 30);
  m.def("poly_dims", [](int a, int b, int bound) { return to_ints(poly_dims(a, b, bound)); });

  m.def("lyndon_words", [](const std::vector<int>& degrees, int bound) {
    std::vector<std::vector<int>> out;
    for (const auto& w : lyndon_words(degrees, bound)) out.push_back(w.letters);
    return out;
  });
  m.def("hm_series_check", [](const std::vector<std::string>& summands, py::object p, int bound) {
    return hm_series_check(parse_all(summands), field(p), bound);
  });

  m.def("parse_torsion_spec", [](const std::string& text) {
    const auto t = parse_torsion_spec(text);
    auto pairs = [](const std::vector<PrimePower>& fs) {
      std::vector<std::pair<std::uint64_t, int>> out;
      for (const auto& f : fs) out.emplace_back(f.prime, f.exponent);
      return out;
    };
    return py::make_tuple(pairs(t.odd), pairs(t.even));
  });
}
