#include <cmath>

#include "doctest.h"
#include "fusionlab/catalog.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/fourier.hpp"
#include "fusionlab/random.hpp"

using namespace fusionlab;

namespace {

ANormBudget small_budget(int radius = -1) {
  ANormBudget b;
  b.ball_radius = radius;
  b.restarts = 6;
  b.iters = 200;
  b.seed = 7;
  return b;
}

L2Vector random_vector(const FusionRing& ring, Philox4x32& rng, int radius) {
  L2Vector v;
  for (Label l : ring.ball(radius)) v[l] = Complex(rng.normal(), rng.normal());
  return v;
}

double sup_norm(const Multiplier& f, const std::vector<Label>& ball) {
  double s = 0;
  for (Label l : ball) s = std::max(s, std::abs(f(l)));
  return s;
}

}  // namespace

TEST_CASE("coefficient examples") {
  const FusionRing z = load_ring("int");
  const Multiplier d = coefficient(z, {{z.unit(), 1.0}}, {{z.unit(), 1.0}});
  for (Label l : z.ball(4)) CHECK(d(l) == Complex(l == z.unit() ? 1.0 : 0.0));

  const double s = 1 / std::sqrt(2.0);
  const L2Vector xi = {{z.unit(), s}, {z.label("1"), s}};
  const Multiplier f = coefficient(z, xi, xi);
  CHECK(f(z.unit()).real() == doctest::Approx(1.0));
  CHECK(f(z.label("1")).real() == doctest::Approx(0.5));
  CHECK(f(z.label("-1")).real() == doctest::Approx(0.5));
  CHECK(std::abs(f(z.label("2"))) == 0.0);

  const FusionRing tl = load_ring("tl:3");
  const Multiplier t = coefficient(tl, {{tl.label("a0"), 1.0}}, {{tl.label("a1"), 1.0}});
  CHECK(t(tl.label("a1")).real() == doctest::Approx(1.0 / 3));
  CHECK(std::abs(t(tl.label("a0"))) == 0.0);
  CHECK(std::abs(t(tl.label("a2"))) == 0.0);
}

TEST_CASE("A-norm examples") {
  const FusionRing z = load_ring("int");
  const ANormBounds d = anorm_bounds(z, delta_multiplier(z, z.unit()), small_budget());
  CHECK(d.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.upper == doctest::Approx(1.0).epsilon(1e-9));

  const ANormBounds fej = anorm_bounds(z, fejer_multiplier(z, 2), small_budget());
  CHECK(fej.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fej.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fej.gap() < 1e-9);

  const FusionRing fib = load_ring("fibonacci");
  const ANormBounds c = anorm_bounds(fib, constant_multiplier(fib, 1.0), small_budget());
  CHECK(c.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.upper == doctest::Approx(1.0).epsilon(1e-9));

  // a character with sign flips on Z: |f|_A = 1
  const Multiplier sign = support_multiplier(z, {{z.unit(), 1.0}, {z.label("1"), -1.0}, {z.label("-1"), -1.0}});
  const ANormBounds sg = anorm_bounds(z, sign, small_budget());
  CHECK(sg.lower <= sg.upper + 1e-12);
  CHECK(sg.upper >= 1.0 - 1e-12);

  CHECK_THROWS_AS(anorm_bounds(z, geometric_multiplier(z, 0.5), small_budget()), InputError);
}

TEST_CASE("A-norm sandwich properties on random coefficients") {
  Philox4x32 rng(17);
  for (const std::string spec : {"int", "tl:3", "fibonacci", "cyclic:5", "ising"}) {
    const FusionRing ring = load_ring(spec);
    for (int trial = 0; trial < 4; ++trial) {
      const L2Vector xi = random_vector(ring, rng, 1);
      const L2Vector eta = random_vector(ring, rng, 1);
      const Multiplier f = coefficient(ring, xi, eta);
      const ANormBounds b = anorm_bounds(ring, f, small_budget(3));
      const double factor = l2_norm(xi) * l2_norm(eta);
      CHECK_MESSAGE(b.lower <= b.upper + 1e-9, spec);
      CHECK_MESSAGE(b.upper <= factor * (1 + 1e-9) + 1e-9, spec);
      CHECK_MESSAGE(sup_norm(f, ring.ball(3)) <= b.upper + 1e-9, spec);
      CHECK_MESSAGE(bnorm_lower(f, {Element::parse(ring, "1*" + ring.name(ring.unit()))}) <= b.upper + 1e-9, spec);
      // the witness reproduces f up to the reported residual
      double err = 0;
      for (Label l : ring.ball(3)) {
        Complex sum = 0;
        for (const auto& [x, y] : b.witness) sum += coefficient(ring, x, y)(l);
        err += std::abs(sum - f(l)) * ring.dim_double(l);
      }
      CHECK_MESSAGE(err <= b.residual + 1e-7, spec);
    }
  }
}

TEST_CASE("A-norm submultiplicativity is consistent with the bounds") {
  const FusionRing z = load_ring("int");
  const Multiplier f = fejer_multiplier(z, 2);
  const Multiplier g = support_multiplier(z, {{z.unit(), 1.0}, {z.label("2"), 0.5}});
  const ANormBounds bf = anorm_bounds(z, f, small_budget());
  const ANormBounds bg = anorm_bounds(z, g, small_budget());
  const ANormBounds bfg = anorm_bounds(z, pointwise_product(f, g), small_budget());
  CHECK(bfg.lower <= bf.upper * bg.upper + 1e-9);
}

TEST_CASE("A-norm is deterministic for a fixed seed") {
  const FusionRing tl = load_ring("tl:3");
  const Multiplier f = support_multiplier(tl, {{tl.label("a0"), 1.0}, {tl.label("a1"), 0.25}, {tl.label("a2"), -0.5}});
  ANormBudget b = small_budget();
  const ANormBounds one = anorm_bounds(tl, f, b);
  b.threads = 3;
  const ANormBounds two = anorm_bounds(tl, f, b);
  CHECK(one.lower == two.lower);
  CHECK(one.upper == two.upper);
  CHECK(one.best_start == two.best_start);
}

TEST_CASE("approximate unit defects") {
  const FusionRing z = load_ring("int");
  const Multiplier delta = delta_multiplier(z, z.unit());
  const FusionRing fib = load_ring("fibonacci");
  const DefectInterval zero =
      approx_unit_defect(fib, constant_multiplier(fib, 1.0), constant_multiplier(fib, 1.0), small_budget());
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper <= 1e-12);

  // Fejer at 0 is 1, so phi f - f vanishes for f supported at the unit
  const DefectInterval fej = approx_unit_defect(z, fejer_multiplier(z, 4), delta, small_budget());
  CHECK(fej.upper <= 1e-12);

  const Multiplier f = fejer_multiplier(z, 2);
  const DefectInterval d = approx_unit_defect(z, fejer_multiplier(z, 4), f, small_budget());
  // phi f - f = -(g + g^-1)/8: sup norm 1/8, l1-d norm 1/4, exact value 1/(2 pi)
  CHECK(d.lower <= d.upper + 1e-12);
  CHECK(d.lower >= 0.125 - 1e-9);
  CHECK(d.upper <= 0.25 + 1e-9);
  CHECK(d.lower <= 1 / (2 * M_PI) + 1e-9);
  CHECK(d.upper >= 1 / (2 * M_PI) - 1e-9);
}

TEST_CASE("coefficient difference inequality") {
  Philox4x32 rng(41);
  for (const std::string spec : {"int", "tl:3", "fibonacci"}) {
    const FusionRing ring = load_ring(spec);
    for (int trial = 0; trial < 3; ++trial) {
      const L2Vector xi1 = random_vector(ring, rng, 1), eta1 = random_vector(ring, rng, 1);
      const L2Vector xi2 = random_vector(ring, rng, 1), eta2 = random_vector(ring, rng, 1);
      const Multiplier diff = pointwise_combine({1.0, -1.0}, {coefficient(ring, xi1, eta1), coefficient(ring, xi2, eta2)});
      const ANormBounds b = anorm_bounds(ring, diff, small_budget());
      const double rhs = l2_norm(xi1 - xi2) * l2_norm(eta1) + l2_norm(eta1 - eta2) * l2_norm(xi2);
      CHECK_MESSAGE(b.lower <= rhs + 1e-8, spec);
    }
  }
}
