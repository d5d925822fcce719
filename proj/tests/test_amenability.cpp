#include <cmath>

#include "doctest.h"
#include "fusionlab/amenability.hpp"
#include "fusionlab/catalog.hpp"
#include "fusionlab/error.hpp"

using namespace fusionlab;

namespace {

ANormBudget small_budget() {
  ANormBudget b;
  b.restarts = 4;
  b.iters = 200;
  b.seed = 3;
  return b;
}

}  // namespace

TEST_CASE("Folner coefficients") {
  for (const std::string spec : {"fibonacci", "ising", "su2:3", "cyclic:5"}) {
    const FusionRing ring = load_ring(spec);
    const Multiplier phi = folner_coefficient(ring, ring.labels());
    for (Label l : ring.labels()) CHECK_MESSAGE(phi(l).real() == doctest::Approx(1.0).epsilon(1e-12), spec);
  }
  const FusionRing z = load_ring("int");
  for (int n : {1, 3, 6}) {
    const Multiplier phi = folner_coefficient(z, z.ball(n));
    for (int k = -2 * n - 2; k <= 2 * n + 2; ++k) {
      const double expected = std::max(0.0, 1.0 - std::abs(k) / (2.0 * n + 1));
      CHECK(phi(z.label(std::to_string(k))).real() == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  const FusionRing f2 = load_ring("free:2");
  const Multiplier phi = folner_coefficient(f2, f2.ball(2));
  CHECK(phi(f2.unit()).real() == doctest::Approx(1.0));
  CHECK(phi(f2.label("a")).real() <= 0.8);
  CHECK(phi(f2.label("a")).real() > 0);
}

TEST_CASE("Kesten verdicts") {
  const FusionRing z = load_ring("int");
  SpectralBudget zb;
  zb.ball_radius = 300;
  const KestenReport kz = kesten_report(z, z.generators(), zb);
  CHECK(kz.dim == 2.0);
  CHECK(kz.verdict == "amenable-consistent");
  CHECK_FALSE(kz.heuristic_verdict);
  CHECK(kz.defect_lower >= 0.0);
  // the ball is a path on 601 vertices; certified bounds must bracket its defect
  CHECK(kz.defect_upper >= 2 - 2 * std::cos(M_PI / 602) - 1e-12);
  CHECK(kz.defect_upper < 1e-4);

  const FusionRing fib = load_ring("fibonacci");
  const KestenReport kf = kesten_report(fib, fib.generators());
  CHECK(kf.verdict == "amenable-consistent");
  CHECK(kf.defect_upper < 1e-9);

  const FusionRing tl = load_ring("tl:3");
  const KestenReport kt = kesten_report(tl, tl.generators());
  CHECK(kt.dim == 6.0);
  CHECK(kt.verdict == "non-amenable-evidence");
  CHECK(kt.heuristic_verdict);
  CHECK(kt.heuristic_defect == doctest::Approx(2.0).epsilon(1e-6));

  const FusionRing f2 = load_ring("free:2");
  const KestenReport kf2 = kesten_report(f2, f2.generators());
  CHECK(kf2.verdict == "non-amenable-evidence");
  CHECK(std::abs(kf2.heuristic_defect - (4 - 2 * std::sqrt(3.0))) < 0.05);

  // thresholds that cannot be met leave the question open
  KestenThresholds strict;
  strict.amenable = 1e-12;
  strict.non_amenable = 10;
  CHECK(kesten_report(z, z.generators(), zb, strict).verdict == "inconclusive");
}

TEST_CASE("Leptin defects along nets") {
  const FusionRing z = load_ring("int");
  const std::vector<Multiplier> net = {fejer_multiplier(z, 2), fejer_multiplier(z, 4), fejer_multiplier(z, 8),
                                       fejer_multiplier(z, 16)};
  const std::vector<Multiplier> tests = {delta_multiplier(z, z.label("1"))};
  const LeptinReport r = leptin_check(z, net, tests, small_budget());
  REQUIRE(r.rows.size() == 4);
  CHECK(r.all_monotone());
  const double expected[] = {0.5, 0.25, 0.125, 0.0625};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.rows[i].upper == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(r.rows[i].lower <= r.rows[i].upper + 1e-12);
  }

  // a net that gets worse is flagged
  const LeptinReport bad = leptin_check(z, {fejer_multiplier(z, 8), fejer_multiplier(z, 2)}, tests, small_budget());
  CHECK_FALSE(bad.all_monotone());
  REQUIRE(bad.monotone.size() == 1);
  CHECK_FALSE(bad.monotone[0]);

  const FusionRing fib = load_ring("fibonacci");
  const LeptinReport f = leptin_check(fib, {constant_multiplier(fib, 1.0)},
                                      {delta_multiplier(fib, fib.label("tau"))}, small_budget());
  CHECK(f.rows.at(0).upper <= 1e-12);
}

TEST_CASE("multiplier specs") {
  const FusionRing z = load_ring("int");
  const Multiplier f = parse_multiplier(z, "folner:2");
  CHECK(f(z.label("1")).real() == doctest::Approx(0.8));
  CHECK(parse_multiplier(z, "geometric:0.5")(z.label("-2")).real() == doctest::Approx(0.25));
  CHECK_THROWS_AS(parse_multiplier(z, "geometric:half"), InputError);
  CHECK_THROWS_AS(parse_multiplier(z, "delta:x"), InputError);
  CHECK_THROWS_AS(parse_multiplier(z, R"({"support": {"0": "one"}})"), InputError);
  CHECK_THROWS_AS(parse_multiplier(z, R"({"support": 3})"), InputError);
}
