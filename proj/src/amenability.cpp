#include "fusionlab/amenability.hpp"

#include <algorithm>
#include <cmath>

#include "fusionlab/error.hpp"
#include "json.hpp"

namespace fusionlab {

Multiplier folner_coefficient(const FusionRing& ring, const std::vector<Label>& set) {
  if (set.empty()) throw InputError("Folner set is empty");
  double total = 0;
  for (Label b : set) total += std::pow(ring.dim_double(b), 2);
  const double norm = std::sqrt(total);
  L2Vector xi;
  for (Label b : set) xi[b] = ring.dim_double(b) / norm;
  const Multiplier phi = coefficient(ring, xi, xi);
  return Multiplier(phi.support(), "folner", "folner(|F|=" + std::to_string(set.size()) + ")");
}

namespace {

double parse_real(std::string_view text) {
  try {
    return Number::parse(text).to_double();
  } catch (const InputError&) {
    throw InputError("malformed multiplier parameter '" + std::string(text) + "'");
  }
}

int parse_count(std::string_view text, std::string_view what) {
  const double v = parse_real(text);
  if (v != std::floor(v) || v < 0 || v > 1e6) {
    throw InputError(std::string(what) + " needs a non-negative integer, got '" + std::string(text) + "'");
  }
  return static_cast<int>(v);
}

Complex json_value(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_string()) return {parse_real(v.get<std::string>()), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError("multiplier values must be numbers or [re, im] pairs, got " + v.dump());
}

}  // namespace

Multiplier parse_multiplier(const FusionRing& ring, std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  if (s.starts_with("{")) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed multiplier literal: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("support") || !doc["support"].is_object()) {
      throw InputError("multiplier literal needs a \"support\" object");
    }
    Multiplier::Support values;
    for (const auto& [key, value] : doc["support"].items()) values[ring.label(key)] += json_value(value);
    return support_multiplier(ring, values);
  }
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw InputError("unknown multiplier '" + std::string(text) + "'");
  const std::string_view family = s.substr(0, colon);
  const std::string_view arg = s.substr(colon + 1);
  if (family == "fejer") return fejer_multiplier(ring, parse_count(arg, "fejer:n"));
  if (family == "geometric") return geometric_multiplier(ring, parse_real(arg));
  if (family == "constant") return constant_multiplier(ring, {parse_real(arg), 0.0});
  if (family == "delta") return delta_multiplier(ring, ring.label(arg));
  if (family == "folner") {
    const int r = parse_count(arg, "folner:r");
    Multiplier phi = folner_coefficient(ring, ring.ball(r));
    return Multiplier(phi.support(), "folner", "folner:" + std::to_string(r));
  }
  throw InputError("unknown multiplier family '" + std::string(family) + "'");
}

KestenReport kesten_report(const FusionRing& ring, const std::vector<Label>& generators, const SpectralBudget& budget,
                           const KestenThresholds& thresholds) {
  KestenReport report;
  report.generators = generators;
  report.thresholds = thresholds;
  const Element x = symmetrized_generator(ring, generators);
  report.element = x.str();
  report.dim = x.l1_dim_norm();
  report.bounds = estimate_norm(x, budget);
  NormBounds& nb = report.bounds;
  // x has non-negative coefficients, so the l1-d bound is d(x) itself.
  nb.upper = std::min(nb.upper, report.dim);
  nb.lower = std::min(nb.lower, nb.upper);
  nb.heuristic = std::clamp(nb.heuristic, nb.lower, nb.upper);
  report.defect_lower = report.dim - nb.upper;
  report.defect_upper = report.dim - nb.lower;
  report.heuristic_defect = report.dim - nb.heuristic;
  if (report.defect_upper < thresholds.amenable) {
    report.verdict = "amenable-consistent";
  } else if (report.defect_lower > thresholds.non_amenable) {
    report.verdict = "non-amenable-evidence";
  } else if (report.heuristic_defect > thresholds.non_amenable) {
    report.verdict = "non-amenable-evidence";
    report.heuristic_verdict = true;
  } else {
    report.verdict = "inconclusive";
  }
  return report;
}

bool LeptinReport::all_monotone() const {
  return std::all_of(monotone.begin(), monotone.end(), [](bool b) { return b; });
}

LeptinReport leptin_check(const FusionRing& ring, const std::vector<Multiplier>& net,
                          const std::vector<Multiplier>& tests, const ANormBudget& budget) {
  if (net.empty()) throw InputError("leptin check needs at least one net member");
  if (tests.empty()) throw InputError("leptin check needs at least one test function");
  LeptinReport report;
  const std::vector<Label> probe_ball = ring.ball(2);
  for (const Multiplier& phi : net) {
    report.net.push_back(phi.description());
    if (!phi.finitely_supported()) throw InputError("net member '" + phi.description() + "' is not finitely supported");
    const PositivityVerdict v = fusion_positivity(ring, phi, probe_ball);
    if (!v.positive) report.warnings.push_back("net member '" + phi.description() + "' is not fusion-positive on ball(2)");
  }
  for (const Multiplier& f : tests) report.tests.push_back(f.description());
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = 0; j < tests.size(); ++j) {
      const DefectInterval d = approx_unit_defect(ring, net[i], tests[j], budget);
      report.rows.push_back({i, j, d.lower, d.upper});
    }
  }
  for (std::size_t j = 0; j < tests.size(); ++j) {
    bool ok = true;
    for (std::size_t i = 1; i < net.size(); ++i) {
      if (report.rows[i * tests.size() + j].upper > report.rows[(i - 1) * tests.size() + j].upper) ok = false;
    }
    report.monotone.push_back(ok);
  }
  return report;
}

}  // namespace fusionlab
