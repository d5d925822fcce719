#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fusionlab/catalog.hpp"
#include "fusionlab/cli.hpp"
#include "fusionlab/element.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/spectral.hpp"
#include "fusionlab/walk.hpp"

namespace py = pybind11;
using namespace fusionlab;

namespace {

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::vector<std::string> ring_moments(const std::string& ring, const std::string& x, int n) {
  const FusionRing r = load_ring(ring);
  const MomentSequence m = moments(Element::parse(r, x), n);
  std::vector<std::string> out;
  for (const auto& s : m.m) out.push_back(s.str());
  return out;
}

std::string ring_multiply(const std::string& ring, const std::string& x, const std::string& y) {
  const FusionRing r = load_ring(ring);
  return (Element::parse(r, x) * Element::parse(r, y)).str();
}

py::dict norm_bounds(const std::string& ring, const std::string& x, int ball_radius) {
  const FusionRing r = load_ring(ring);
  SpectralBudget b;
  b.ball_radius = ball_radius;
  NormBounds nb;
  {
    py::gil_scoped_release release;
    nb = estimate_norm(Element::parse(r, x), b);
  }
  py::dict d;
  d["lower"] = nb.lower;
  d["upper"] = nb.upper;
  d["heuristic"] = nb.heuristic;
  d["heuristic_certified"] = nb.heuristic_certified;
  return d;
}

bool validate(const std::string& ring, int radius) { return validate_axioms(load_ring(ring), radius).passed(); }

std::map<std::string, std::string> walk(const std::string& ring, const std::string& gen, int steps) {
  const FusionRing r = load_ring(ring);
  std::map<std::string, std::string> out;
  for (const auto& [l, p] : walk_distribution(r, r.label(gen), steps)) out[r.name(l)] = p.str();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fusionlab native core";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  m.def("run", &run, py::arg("args"), "Run the command line tool in process; returns (exit_code, stdout, stderr).");
  m.def("moments", &ring_moments, py::arg("ring"), py::arg("x"), py::arg("n"),
        "Exact trace moments tau(x^k) for k = 0..n as strings.");
  m.def("multiply", &ring_multiply, py::arg("ring"), py::arg("x"), py::arg("y"));
  m.def("norm_bounds", &norm_bounds, py::arg("ring"), py::arg("x"), py::arg("ball_radius") = 8);
  m.def("validate", &validate, py::arg("ring"), py::arg("radius") = 3);
  m.def("walk_distribution", &walk, py::arg("ring"), py::arg("gen"), py::arg("steps"),
        "Exact law of the walk after `steps` steps, label -> probability string.");
}
