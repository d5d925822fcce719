#include "fusionlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fusionlab/amenability.hpp"
#include "fusionlab/catalog.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/random.hpp"
#include "fusionlab/report.hpp"
#include "fusionlab/walk.hpp"

namespace fusionlab::cli {

namespace {

using report::Json;
using Config = std::vector<std::pair<std::string, std::string>>;

struct Options {
  std::string ring = "int";
  int radius = 3;
  std::string gens;
  std::string gen;
  int moment_order = -1;
  int ball_radius = -1;
  int restarts = 20;
  int iters = -1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int steps = 4;
  std::string format = "text";
  int threads = 1;
  std::vector<std::string> positionals;
  std::vector<std::string> net;
  std::vector<std::string> tests;
};

std::string names(const FusionRing& ring, const std::vector<Label>& labels) {
  std::string out;
  for (Label l : labels) out += (out.empty() ? "" : ",") + ring.name(l);
  return out;
}

Json label_list(const FusionRing& ring, const std::vector<Label>& labels) {
  Json out = Json::array();
  for (Label l : labels) out.push_back(ring.name(l));
  return out;
}

// Splits on commas outside parentheses so product labels survive.
std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Label> resolve_gens(const FusionRing& ring, const std::string& text) {
  if (text.empty()) {
    auto gens = ring.generators();
    if (gens.empty()) throw InputError("ring " + ring.spec() + " has no default generators; pass --gens");
    return gens;
  }
  std::vector<Label> out;
  for (const auto& name : split_labels(text)) out.push_back(ring.label(name));
  if (out.empty()) throw InputError("--gens is empty");
  return out;
}

Json vector_json(const FusionRing& ring, const L2Vector& v) {
  Json out = Json::array();
  for (const auto& [l, c] : v) {
    out.push_back(Json{{"label", ring.name(l)}, {"re", report::number(c.real(), true)},
                       {"im", report::number(c.imag(), true)}});
  }
  return out;
}

Json norm_json(const NormBounds& nb) {
  Json j;
  j["lower"] = report::number(nb.lower, true);
  j["upper"] = report::number(nb.upper, true);
  j["heuristic"] = report::number(nb.heuristic, nb.heuristic_certified);
  j["lower_method"] = nb.lower_method;
  j["upper_method"] = nb.upper_method;
  j["heuristic_method"] = nb.heuristic_method;
  j["extreme_sign"] = nb.sign > 0 ? "positive" : (nb.sign < 0 ? "negative" : "zero");
  j["ball_size"] = report::count(nb.ball_size);
  j["lanczos_iterations"] = report::count(static_cast<std::uint64_t>(nb.lanczos_iterations));
  j["moment_order_used"] = report::count(static_cast<std::uint64_t>(nb.moment_order_used));
  j["aitken"] = report::number(nb.aitken, false);
  return j;
}

Json cmd_validate(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  cfg.emplace_back("radius", std::to_string(o.radius));
  const ValidationReport r = validate_axioms(ring, o.radius);
  Json j;
  j["summary"] = Json::array({std::string(r.passed() ? "PASS" : "FAIL") + " radius=" + std::to_string(r.radius),
                              r.passed() ? "all axioms pass" : "axiom violations found"});
  j["ring"] = ring.spec();
  j["passed"] = r.passed();
  j["ball_size"] = report::count(r.ball_size);
  j["exact_dimensions"] = r.exact_dimensions;
  j["tolerance"] = report::number(r.exact_dimensions ? 0.0 : r.tolerance, true);
  j["associativity_scope"] = r.associativity_scope;
  j["axioms"] = Json::array();
  for (const AxiomResult& a : r.axioms) {
    Json aj;
    aj["name"] = a.name;
    aj["identity"] = a.identity;
    aj["passed"] = a.passed;
    aj["checked"] = report::count(a.checked);
    aj["violations"] = report::count(a.violation_count);
    if (!a.violations.empty()) {
      aj["witnesses"] = Json::array();
      for (const AxiomViolation& v : a.violations) {
        aj["witnesses"].push_back(Json{{"labels", label_list(ring, v.witness)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
      }
    }
    j["axioms"].push_back(aj);
  }
  return j;
}

Json cmd_multiply(const Options& o, Config& cfg) {
  if (o.positionals.size() != 2) throw InputError("multiply needs exactly two elements, e.g. 'a1' 'a1'");
  const FusionRing ring = load_ring(o.ring);
  cfg.emplace_back("x", o.positionals[0]);
  cfg.emplace_back("y", o.positionals[1]);
  const Element x = Element::parse(ring, o.positionals[0]);
  const Element y = Element::parse(ring, o.positionals[1]);
  const Element xy = x * y;
  Json j;
  j["x"] = x.str();
  j["y"] = y.str();
  j["product"] = xy.str();
  j["star_product"] = xy.star().str();
  j["terms"] = report::count(xy.size());
  return j;
}

Element element_or_generator(const FusionRing& ring, const Options& o, Config& cfg) {
  if (o.positionals.size() > 1) throw InputError("expected at most one element");
  if (!o.positionals.empty()) {
    if (!o.gens.empty()) throw InputError("pass either an element or --gens, not both");
    cfg.emplace_back("x", o.positionals[0]);
    return Element::parse(ring, o.positionals[0]);
  }
  const auto gens = resolve_gens(ring, o.gens);
  cfg.emplace_back("gens", names(ring, gens));
  return symmetrized_generator(ring, gens);
}

Json cmd_moments(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  const int order = o.moment_order < 0 ? 8 : o.moment_order;
  const Element x = element_or_generator(ring, o, cfg);
  cfg.emplace_back("moment-order", std::to_string(order));
  const MomentSequence seq = moments(x, order);
  Json j;
  j["element"] = x.str();
  Json values = Json::array();
  for (const Scalar& m : seq.m) values.push_back(report::exact(m.str()));
  j["moments"] = values;
  return j;
}

SpectralBudget spectral_budget(const Options& o, Config& cfg) {
  SpectralBudget b;
  if (o.ball_radius >= 0) b.ball_radius = o.ball_radius;
  if (o.iters >= 0) b.lanczos_iters = o.iters;
  if (o.moment_order >= 0) b.moment_order = o.moment_order;
  if (b.moment_order > kDefaultMomentBudget) {
    throw InputError("--moment-order exceeds the budget of " + std::to_string(kDefaultMomentBudget));
  }
  cfg.emplace_back("ball-radius", std::to_string(b.ball_radius));
  cfg.emplace_back("iters", std::to_string(b.lanczos_iters));
  cfg.emplace_back("moment-order", std::to_string(b.moment_order));
  return b;
}

Json cmd_norm(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  const Element x = element_or_generator(ring, o, cfg);
  const SpectralBudget b = spectral_budget(o, cfg);
  Json j;
  j["element"] = x.str();
  j["self_adjoint"] = x.star() == x;
  const Json nb = norm_json(estimate_norm(x, b));
  for (const auto& [k, v] : nb.items()) j[k] = v;
  return j;
}

Json cmd_kesten(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  const auto gens = resolve_gens(ring, o.gens);
  cfg.emplace_back("gens", names(ring, gens));
  const SpectralBudget b = spectral_budget(o, cfg);
  const KestenReport r = kesten_report(ring, gens, b);
  Json j;
  j["summary"] = Json::array({"verdict: " + r.verdict + (r.heuristic_verdict ? " (heuristic)" : "")});
  j["verdict"] = r.verdict;
  j["verdict_basis"] = r.verdict == "inconclusive" ? "none" : (r.heuristic_verdict ? "heuristic" : "certified");
  j["convention"] = "x = sum over generators g of (g + conj g)";
  j["element"] = r.element;
  j["dim_x"] = report::number(r.dim, true);
  j["norm_lower"] = report::number(r.bounds.lower, true);
  j["norm_upper"] = report::number(r.bounds.upper, true);
  j["norm_heuristic"] = report::number(r.bounds.heuristic, r.bounds.heuristic_certified);
  j["norm_method"] = Json{{"lower", r.bounds.lower_method},
                          {"upper", r.bounds.upper_method},
                          {"heuristic", r.bounds.heuristic_method}};
  j["defect_lower"] = report::number(r.defect_lower, true);
  j["defect_upper"] = report::number(r.defect_upper, true);
  j["heuristic_defect"] = report::number(r.heuristic_defect, r.bounds.heuristic_certified);
  j["thresholds"] = Json{{"amenable", report::number(r.thresholds.amenable, true)},
                         {"non_amenable", report::number(r.thresholds.non_amenable, true)}};
  j["ball_size"] = report::count(r.bounds.ball_size);
  return j;
}

Json cmd_cp_check(const Options& o, Config& cfg) {
  if (o.positionals.size() != 1) throw InputError("cp-check needs one multiplier, e.g. 'geometric:0.5'");
  const FusionRing ring = load_ring(o.ring);
  cfg.emplace_back("multiplier", o.positionals[0]);
  cfg.emplace_back("radius", std::to_string(o.radius));
  const Multiplier phi = parse_multiplier(ring, o.positionals[0]);
  const std::vector<Label> ball = ring.ball(o.radius);
  const PositivityVerdict v = fusion_positivity(ring, phi, ball);
  Json j;
  j["summary"] = Json::array({"status: " + v.status + " (necessary condition only)"});
  j["status"] = v.status;
  j["scope"] = "fusion-positivity is necessary for complete positivity, not sufficient";
  j["multiplier"] = phi.description();
  j["ball"] = label_list(ring, ball);
  j["min_eigenvalue"] = report::number(v.min_eigenvalue, false);
  j["largest_abs_eigenvalue"] = report::number(v.scale, false);
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness.size() > 0) {
    L2Vector w;
    for (Eigen::Index i = 0; i < v.witness.size(); ++i) {
      if (std::abs(v.witness[i]) > 1e-15) w[v.ball[static_cast<std::size_t>(i)]] = v.witness[i];
    }
    j["witness"] = vector_json(ring, w);
    j["witness_value"] = report::number(v.witness_value, false);
  }
  j["uniform_deviation"] = report::number(uniform_deviation(phi, ball), true);
  std::vector<Label> focus;
  if (phi.finitely_supported()) {
    for (const auto& [l, c] : phi.support()) focus.push_back(l);
  }
  j["bnorm_lower"] = report::number(default_probe_bound(ring, phi, focus).value, true);
  return j;
}

ANormBudget anorm_budget(const Options& o, Config& cfg) {
  ANormBudget b;
  b.ball_radius = o.ball_radius;
  b.restarts = o.restarts;
  b.iters = o.iters < 0 ? 500 : o.iters;
  b.seed = o.seed;
  b.threads = o.threads;
  cfg.emplace_back("ball-radius", o.ball_radius < 0 ? "auto" : std::to_string(o.ball_radius));
  cfg.emplace_back("restarts", std::to_string(b.restarts));
  cfg.emplace_back("iters", std::to_string(b.iters));
  cfg.emplace_back("seed", std::to_string(b.seed));
  return b;
}

Json cmd_anorm(const Options& o, Config& cfg) {
  if (o.positionals.size() != 1) throw InputError("anorm needs one finitely supported multiplier");
  const FusionRing ring = load_ring(o.ring);
  cfg.emplace_back("multiplier", o.positionals[0]);
  const ANormBudget budget = anorm_budget(o, cfg);
  const Multiplier f = parse_multiplier(ring, o.positionals[0]);
  const ANormBounds r = anorm_bounds(ring, f, budget);
  Json j;
  j["multiplier"] = f.description();
  j["lower"] = report::number(r.lower, true);
  j["upper"] = report::number(r.upper, true);
  j["gap"] = report::number(r.gap(), true);
  j["sharpened_lower"] = report::number(r.sharpened_lower, false);
  Json probe = Json::array();
  for (const auto& [l, c] : r.lower_probe) probe.push_back(Json{{"label", ring.name(l)}, {"coefficient", report::count(0)}});
  for (std::size_t i = 0; i < r.lower_probe.size(); ++i) {
    probe[i]["coefficient"] = report::number(r.lower_probe[i].second, true);
  }
  j["lower_probe"] = probe;
  j["optimizer"] = Json{{"ball_radius", report::count(static_cast<std::uint64_t>(r.ball_radius))},
                        {"ball_size", report::count(r.ball_size)},
                        {"closure_size", report::count(r.closure_size)},
                        {"starts", report::count(static_cast<std::uint64_t>(r.starts))},
                        {"feasible_starts", report::count(static_cast<std::uint64_t>(r.feasible_starts))},
                        {"best_start", r.best_start},
                        {"factor_norm", report::number(r.factor_norm, true)},
                        {"residual_correction", report::number(r.residual, true)}};
  j["witness"] = Json::array();
  for (const auto& [xi, eta] : r.witness) {
    j["witness"].push_back(Json{{"xi", vector_json(ring, xi)}, {"eta", vector_json(ring, eta)}});
  }
  return j;
}

Json cmd_leptin(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  if (o.net.empty()) throw InputError("leptin needs at least one --net multiplier");
  if (o.tests.empty()) throw InputError("leptin needs at least one --test multiplier");
  std::string net_text, test_text;
  for (const auto& s : o.net) net_text += (net_text.empty() ? "" : " ; ") + s;
  for (const auto& s : o.tests) test_text += (test_text.empty() ? "" : " ; ") + s;
  cfg.emplace_back("net", net_text);
  cfg.emplace_back("test", test_text);
  const ANormBudget budget = anorm_budget(o, cfg);
  std::vector<Multiplier> net, tests;
  for (const auto& s : o.net) net.push_back(parse_multiplier(ring, s));
  for (const auto& s : o.tests) tests.push_back(parse_multiplier(ring, s));
  const LeptinReport r = leptin_check(ring, net, tests, budget);
  Json j;
  j["summary"] = Json::array({std::string("defect uppers non-increasing along the net: ") +
                              (r.all_monotone() ? "yes" : "no")});
  j["net"] = r.net;
  j["tests"] = r.tests;
  j["table"] = Json::array();
  for (const LeptinRow& row : r.rows) {
    j["table"].push_back(Json{{"net", r.net[row.net_index]},
                              {"test", r.tests[row.test_index]},
                              {"defect_lower", report::number(row.lower, true)},
                              {"defect_upper", report::number(row.upper, true)}});
  }
  j["monotone"] = r.all_monotone();
  j["warnings"] = r.warnings;
  return j;
}

Json cmd_walk(const Options& o, Config& cfg) {
  const FusionRing ring = load_ring(o.ring);
  Label g;
  if (o.gen.empty()) {
    const auto gens = ring.generators();
    if (gens.empty()) throw InputError("ring has no default generator; pass --gen");
    g = gens.front();
  } else {
    g = ring.label(o.gen);
  }
  cfg.emplace_back("gen", ring.name(g));
  cfg.emplace_back("steps", std::to_string(o.steps));
  cfg.emplace_back("trials", std::to_string(o.trials));
  cfg.emplace_back("seed", std::to_string(o.seed));
  const auto dist = walk_distribution(ring, g, o.steps);
  Json j;
  j["generator"] = ring.name(g);
  j["kernel"] = "p(c|a) = N(g,a;c) d(c) / (d(g) d(a))";
  j["distribution"] = Json::array();
  for (const auto& [l, p] : dist) {
    if (p.is_zero()) continue;
    j["distribution"].push_back(Json{{"label", ring.name(l)},
                                     {"probability", p.is_exact() ? report::exact(p.str()) : report::number(p.to_double(), true)}});
  }
  const auto it = dist.find(ring.unit());
  const Number ret = it == dist.end() ? Number(0) : it->second;
  j["return_probability"] = ret.is_exact() ? report::exact(ret.str()) : report::number(ret.to_double(), true);
  if (o.trials > 0) {
    const EmpiricalDistribution sample = walk_simulate(ring, g, o.steps, o.trials, o.seed, o.threads);
    j["rng"] = Philox4x32::kName;
    j["empirical"] = Json::array();
    for (const auto& [l, c] : sample.counts) {
      j["empirical"].push_back(Json{{"label", ring.name(l)}, {"count", report::count(c)}});
    }
    j["total_variation"] = report::number(total_variation(dist, sample), false);
  }
  return j;
}

Json cmd_catalog(const Options&, Config&) {
  Json j;
  j["rings"] = Json::array();
  for (const auto& e : catalog_entries()) j["rings"].push_back(Json{{"spec", e.syntax}, {"description", e.description}});
  j["multipliers"] = Json::array({"fejer:n", "geometric:r", "constant:c", "delta:<label>", "folner:<radius>",
                                  "{\"support\": {\"<label>\": value}}"});
  j["file_format"] = ".fusion JSON with name, labels, unit, conj, dim, fusion [[a,b,c,N]...], optional generators";
  return j;
}

int env_threads() {
  if (const char* v = std::getenv("FUSIONLAB_THREADS")) {
    try {
      const int n = std::stoi(v);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fusionlab: fusion-ring Fourier analysis and amenability diagnostics", "fusionlab"};
  app.require_subcommand(1);
  Options o;
  o.threads = env_threads();

  struct Verb {
    std::string name;
    std::string help;
    std::function<Json(const Options&, Config&)> handler;
  };
  const std::vector<Verb> verbs = {
      {"validate", "check fusion-ring axioms on a ball", cmd_validate},
      {"multiply", "multiply two elements of the fusion algebra", cmd_multiply},
      {"moments", "exact trace moments tau(x^n)", cmd_moments},
      {"norm", "bounds for the regular-representation norm of x", cmd_norm},
      {"kesten", "Kesten amenability report for a generating set", cmd_kesten},
      {"cp-check", "fusion-positivity of a multiplier (necessary condition)", cmd_cp_check},
      {"anorm", "Fourier-algebra norm sandwich of a finitely supported multiplier", cmd_anorm},
      {"leptin", "approximate-unit defects of a multiplier net", cmd_leptin},
      {"walk", "dimension-weighted random walk, exact and Monte Carlo", cmd_walk},
      {"catalog", "list ring specs and multiplier families", cmd_catalog},
  };

  std::vector<CLI::App*> subs;
  for (const Verb& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", o.threads, "worker threads (default FUSIONLAB_THREADS or 1)")
        ->check(CLI::Range(1, 256));
    if (v.name == "catalog") {
      subs.push_back(sub);
      continue;
    }
    sub->add_option("--ring", o.ring, "ring spec or .fusion file")->required();
    if (v.name == "validate" || v.name == "cp-check") {
      sub->add_option("--radius", o.radius, "ball radius")->check(CLI::Range(0, 1000000));
    }
    if (v.name == "moments" || v.name == "norm" || v.name == "kesten") {
      sub->add_option("--gens", o.gens, "comma-separated generator labels");
      sub->add_option("--moment-order", o.moment_order, "highest moment")->check(CLI::Range(0, 1000));
    }
    if (v.name == "norm" || v.name == "kesten") {
      sub->add_option("--ball-radius", o.ball_radius, "truncation radius")->check(CLI::Range(0, 1000000));
      sub->add_option("--iters", o.iters, "Lanczos iteration cap")->check(CLI::Range(1, 1000000));
    }
    if (v.name == "anorm" || v.name == "leptin") {
      sub->add_option("--ball-radius", o.ball_radius, "optimizer ball radius")->check(CLI::Range(0, 1000));
      sub->add_option("--restarts", o.restarts, "random restarts")->check(CLI::Range(0, 100000));
      sub->add_option("--iters", o.iters, "refinement iterations per start")->check(CLI::Range(0, 1000000));
      sub->add_option("--seed", o.seed, "64-bit seed");
    }
    if (v.name == "leptin") {
      sub->add_option("--net", o.net, "net member multiplier (repeatable)")->take_all();
      sub->add_option("--test", o.tests, "test multiplier (repeatable)")->take_all();
    }
    if (v.name == "walk") {
      sub->add_option("--gen", o.gen, "generator label");
      sub->add_option("--steps", o.steps, "number of steps")->check(CLI::Range(0, kWalkStepBudget));
      sub->add_option("--trials", o.trials, "Monte Carlo trials (0: exact only)");
      sub->add_option("--seed", o.seed, "64-bit seed");
    }
    if (v.name == "multiply" || v.name == "moments" || v.name == "norm" || v.name == "cp-check" ||
        v.name == "anorm") {
      sub->add_option("args", o.positionals, "elements or multiplier");
    }
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fusionlab: " << e.what() << "\n";
    return 2;
  }

  for (std::size_t i = 0; i < verbs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const report::Format format = report::parse_format(o.format);
      Config cfg;
      if (verbs[i].name != "catalog") cfg.emplace_back("ring", o.ring);
      Json result = verbs[i].handler(o, cfg);
      cfg.emplace_back("format", o.format);
      cfg.emplace_back("threads", std::to_string(o.threads));
      out << report::emit(report::envelope(verbs[i].name, cfg, std::move(result)), format);
      return 0;
    } catch (const InputError& e) {
      err << "fusionlab: " << e.what() << "\n";
      return 2;
    } catch (const ComputationError& e) {
      err << "fusionlab: computation failed: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "fusionlab: computation failed: " << e.what() << "\n";
      return 1;
    }
  }
  err << "fusionlab: no command given\n";
  return 2;
}

}  // namespace fusionlab::cli
