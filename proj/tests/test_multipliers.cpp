#include <cmath>

#include "doctest.h"
#include "fusionlab/amenability.hpp"
#include "fusionlab/catalog.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/fourier.hpp"
#include "fusionlab/random.hpp"
#include "oracles.hpp"

using namespace fusionlab;

namespace {

const std::vector<std::string> kCatalog = {"cyclic:5", "int",   "free:2", "tl:2", "tl:3",
                                           "su2:3",    "fibonacci", "ising", "product:fibonacci,ising"};

Multiplier fib_phi(const FusionRing& fib, double t) {
  return support_multiplier(fib, {{fib.unit(), 1.0}, {fib.label("tau"), t}});
}

L2Vector random_vector(const FusionRing& ring, Philox4x32& rng, int radius) {
  L2Vector v;
  for (Label l : ring.ball(radius)) v[l] = Complex(rng.normal(), rng.normal());
  return v;
}

}  // namespace

TEST_CASE("omega_apply examples") {
  const FusionRing fib = load_ring("fibonacci");
  CHECK(omega_apply(constant_multiplier(fib, 1.0), Element::parse(fib, "tau")).real() ==
        doctest::Approx(oracle::golden_ratio()));
  const FusionRing tl = load_ring("tl:3");
  CHECK(omega_apply(delta_multiplier(tl, tl.unit()), Element::parse(tl, "1*a0 + 3*a1")) == Complex(1.0));
  const FusionRing z = load_ring("int");
  const Multiplier sign([&](Label l) { return Complex(z.word_length(l) % 2 ? -1.0 : 1.0); }, "user", "(-1)^k");
  CHECK(omega_apply(sign, Element::parse(z, "g + g^-1")) == Complex(-2.0));
}

TEST_CASE("pointwise algebra") {
  const FusionRing z = load_ring("int");
  const Multiplier one = constant_multiplier(z, 1.0);
  const Multiplier geo = geometric_multiplier(z, 0.5);
  const Multiplier delta = delta_multiplier(z, z.unit());
  for (Label l : z.ball(5)) {
    CHECK(pointwise_product(one, geo)(l) == geo(l));
    CHECK(pointwise_product(delta, delta)(l) == delta(l));
    CHECK(pointwise_product(geometric_multiplier(z, 0.5), geometric_multiplier(z, 0.25))(l).real() ==
          doctest::Approx(geometric_multiplier(z, 0.125)(l).real()));
    const Complex c = pointwise_combine({2.0, Complex(0, 1)}, {geo, delta})(l);
    CHECK(c == 2.0 * geo(l) + Complex(0, 1) * delta(l));
  }
  CHECK(pointwise_product(delta, geo).finitely_supported());
}

TEST_CASE("Gram matrix examples") {
  const FusionRing tl = load_ring("tl:3");
  const auto ball = tl.ball(3);
  const GramMatrix ones = gram_matrix(tl, constant_multiplier(tl, 1.0), ball);
  const GramMatrix delta = gram_matrix(tl, delta_multiplier(tl, tl.unit()), ball);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      CHECK(ones.g(a, b) == Complex(tl.dim_double(ball[i]) * tl.dim_double(ball[j])));
      CHECK(delta.g(a, b) == Complex(i == j ? 1.0 : 0.0));
    }
  }
  CHECK(ones.hermitian);

  const FusionRing fib = load_ring("fibonacci");
  const double d = oracle::golden_ratio();
  for (double t : {-1.2, -0.3, 0.4, 1.0}) {
    const GramMatrix g = gram_matrix(fib, fib_phi(fib, t), fib.labels());
    CHECK(g.g(0, 0).real() == doctest::Approx(1.0));
    CHECK(g.g(0, 1).real() == doctest::Approx(d * t));
    CHECK(g.g(1, 1).real() == doctest::Approx(1 + d * t));
  }
}

TEST_CASE("Gram linearity is exact for dyadic multipliers on integer-dimension rings") {
  Philox4x32 rng(3);
  for (const std::string spec : {"int", "free:2", "tl:3", "cyclic:5"}) {
    const FusionRing ring = load_ring(spec);
    const auto ball = ring.ball(2);
    for (int trial = 0; trial < 10; ++trial) {
      Multiplier::Support s1, s2;
      for (Label l : ring.ball(4)) {
        s1[l] = Complex(static_cast<double>(rng() % 17) / 8, static_cast<double>(rng() % 9) / 4);
        s2[l] = Complex(static_cast<double>(rng() % 33) / 16, 0);
      }
      const Multiplier p1 = support_multiplier(ring, s1);
      const Multiplier p2 = support_multiplier(ring, s2);
      const Complex a(0.5, 0.25), b(-2.0, 0);
      const GramMatrix lhs = gram_matrix(ring, pointwise_combine({a, b}, {p1, p2}), ball);
      const Eigen::MatrixXcd rhs = a * gram_matrix(ring, p1, ball).g + b * gram_matrix(ring, p2, ball).g;
      CHECK(lhs.g == rhs);
    }
  }
}

TEST_CASE("positivity verdicts") {
  const FusionRing z = load_ring("int");
  const auto ball = z.ball(6);
  const PositivityVerdict geo = fusion_positivity(z, geometric_multiplier(z, 0.5), ball);
  CHECK(geo.positive);
  CHECK(geo.status == "fusion-positive");
  // Toeplitz oracle: the Gram matrix of r^|k| on {-6..6}
  Eigen::MatrixXd toeplitz(13, 13);
  for (int i = 0; i < 13; ++i) {
    for (int j = 0; j < 13; ++j) toeplitz(i, j) = std::pow(0.5, std::abs(i - j));
  }
  const double oracle_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(toeplitz).eigenvalues().minCoeff();
  CHECK(geo.min_eigenvalue == doctest::Approx(oracle_min).epsilon(1e-10));

  const FusionRing fib = load_ring("fibonacci");
  const PositivityVerdict bad = fusion_positivity(fib, fib_phi(fib, -1.2), fib.labels());
  CHECK_FALSE(bad.positive);
  CHECK(bad.status == "not-positive");
  CHECK(bad.min_eigenvalue == doctest::Approx(oracle::fibonacci_gram_min(-1.2)).epsilon(1e-12));
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.witness.norm() == doctest::Approx(1.0));
  CHECK(bad.witness_value < 0);
  CHECK(std::abs(bad.witness_value - bad.min_eigenvalue) < 1e-9);

  for (const auto& spec : kCatalog) {
    const FusionRing ring = load_ring(spec);
    const auto b = ring.ball(3);
    CHECK_MESSAGE(fusion_positivity(ring, constant_multiplier(ring, 1.0), b).positive, spec);
    CHECK_MESSAGE(fusion_positivity(ring, delta_multiplier(ring, ring.unit()), b).positive, spec);
  }

  // not Hermitian-symmetric: phi(g) = phi(g^-1) = i
  const Multiplier skew = support_multiplier(z, {{z.unit(), 1.0}, {z.label("1"), Complex(0, 1)}, {z.label("-1"), Complex(0, 1)}});
  const PositivityVerdict sk = fusion_positivity(z, skew, z.ball(2));
  CHECK_FALSE(sk.positive);
  CHECK_FALSE(sk.reason.empty());
}

TEST_CASE("diagonal coefficients and their products are fusion-positive") {
  Philox4x32 rng(21);
  for (const auto& spec : kCatalog) {
    const FusionRing ring = load_ring(spec);
    const auto ball = ring.ball(3);
    for (int trial = 0; trial < 20; ++trial) {
      const L2Vector xi = random_vector(ring, rng, 1);
      const L2Vector eta = random_vector(ring, rng, 1);
      const Multiplier p = coefficient(ring, xi, xi);
      const Multiplier q = coefficient(ring, eta, eta);
      CHECK(fusion_positivity(ring, p, ball).positive);
      CHECK(fusion_positivity(ring, pointwise_product(p, q), ball).positive);
    }
  }
}

TEST_CASE("B-norm probes and uniform deviation") {
  const FusionRing z = load_ring("int");
  CHECK(bnorm_lower(constant_multiplier(z, 1.0), {Element::parse(z, "e")}) == 1.0);
  CHECK(bnorm_lower(delta_multiplier(z, z.unit()), {Element::parse(z, "e")}) == 1.0);
  const Multiplier sign([&](Label l) { return Complex(z.word_length(l) % 2 ? -1.0 : 1.0); }, "user", "(-1)^k");
  CHECK(bnorm_lower(sign, {Element::parse(z, "e - 1/2*g - 1/2*g^-1")}) == doctest::Approx(1.0));
  CHECK(bnorm_lower(sign, {Element(z)}) == 0.0);

  CHECK(uniform_deviation(constant_multiplier(z, 1.0), z.ball(5)) == 0.0);
  CHECK(uniform_deviation(fejer_multiplier(z, 3), z.ball(5)) == doctest::Approx(1.0));
  CHECK(uniform_deviation(geometric_multiplier(z, 0.5), z.ball(4)) == doctest::Approx(1 - std::pow(0.5, 4)));

  const ProbeBound pb = default_probe_bound(z, fejer_multiplier(z, 2), {});
  CHECK(pb.value == doctest::Approx(1.0));
}

TEST_CASE("multiplier literals") {
  const FusionRing z = load_ring("int");
  const Multiplier lit = parse_multiplier(z, R"({"support": {"0": 1.0, "1": 0.5, "-1": 0.5}})");
  const Multiplier fej = parse_multiplier(z, "fejer:2");
  for (Label l : z.ball(4)) CHECK(lit(l) == fej(l));
  CHECK(parse_multiplier(z, R"({"support": {"1": [0, 1]}})")(z.label("1")) == Complex(0, 1));
  CHECK(parse_multiplier(z, "constant:2")(z.label("5")) == Complex(2.0));
  CHECK(parse_multiplier(z, "delta:3")(z.label("3")) == Complex(1.0));
  CHECK_THROWS_AS(parse_multiplier(z, "wobble:3"), InputError);
  CHECK_THROWS_AS(parse_multiplier(z, "fejer:x"), InputError);
}
