#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fusionlab/catalog.hpp"
#include "fusionlab/element.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/random.hpp"

using namespace fusionlab;

namespace {

const std::vector<std::string> kCatalog = {"cyclic:5", "int",        "free:2", "tl:2",  "tl:3",
                                           "su2:3",    "fibonacci",  "ising",  "product:fibonacci,ising"};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> names(const FusionRing& ring, const std::vector<Label>& labels) {
  std::vector<std::string> out;
  for (Label l : labels) out.push_back(ring.name(l));
  return out;
}

Element random_element(const FusionRing& ring, Philox4x32& rng, int radius) {
  const auto ball = ring.ball(radius);
  Element x(ring);
  for (int k = 0; k < 3; ++k) {
    const Label l = ball[rng() % ball.size()];
    x.add(l, Scalar(Rational(static_cast<long long>(rng() % 7) - 3), Rational(static_cast<long long>(rng() % 3) - 1)));
  }
  return x;
}

}  // namespace

TEST_CASE("catalog rings load with their dimensions") {
  const FusionRing fib = load_ring("fibonacci");
  CHECK(fib.finite());
  CHECK(names(fib, fib.labels()) == std::vector<std::string>{"1", "tau"});
  const double d = fib.dim_double(fib.label("tau"));
  CHECK(d == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  // d^2 = 1 + d to the stored precision
  const Number dt = fib.dim(fib.label("tau"));
  CHECK(approx_equal(dt * dt, Number(1) + dt, 1e-40));

  const FusionRing tl = load_ring("tl:3");
  CHECK_FALSE(tl.finite());
  // [n+1]_q with q + 1/q = 3: 1, 3, 8, 21, 55
  const std::vector<long long> expected = {1, 3, 8, 21, 55};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    const Number dn = tl.dim(tl.label("a" + std::to_string(n)));
    REQUIRE(dn.is_exact());
    CHECK(dn == Number(expected[n]));
  }
  const FusionRing su2 = load_ring("su2:3");
  CHECK(su2.labels().size() == 4);
  CHECK(su2.dim_double(su2.label("1")) == doctest::Approx(2 * std::cos(M_PI / 5)).epsilon(1e-14));
}

TEST_CASE("load_ring rejects bad input") {
  CHECK_THROWS_AS(load_ring("nonsense"), InputError);
  CHECK_THROWS_AS(load_ring("tl:1.5"), InputError);
  CHECK_THROWS_AS(load_ring("cyclic:0"), InputError);
  CHECK_THROWS_AS(load_ring("free:x"), InputError);
  const std::string bad = R"({"name":"x","labels":["1"],"unit":"1","conj":{"1":"1"},"dim":{"1":"1"},"fusion":[["1","1","1",1.5]]})";
  CHECK_THROWS_AS(parse_ring_file(bad), InputError);
  CHECK_THROWS_AS(parse_ring_file("{not json"), InputError);
  CHECK_THROWS_AS(load_ring("fibonacci").label("sigma"), InputError);
}

TEST_CASE("finite ring files round-trip") {
  const FusionRing from_file = load_ring(std::string(FUSIONLAB_DATA_DIR) + "/fibonacci.fusion");
  CHECK(from_file.spec() == "file:fibonacci");
  const FusionRing again = parse_ring_file(write_ring_file(from_file));
  for (Label a : from_file.labels()) {
    for (Label b : from_file.labels()) CHECK(from_file.fuse(a, b) == again.fuse(a, b));
  }
  CHECK(validate_axioms(from_file, 3).passed());
  // inline content works too
  CHECK(load_ring(read_file(std::string(FUSIONLAB_DATA_DIR) + "/fibonacci.fusion")).labels().size() == 2);
}

TEST_CASE("multiplication examples") {
  const FusionRing tl = load_ring("tl:3");
  CHECK((Element::parse(tl, "a1") * Element::parse(tl, "a1")) == Element::parse(tl, "a0 + a2"));
  const FusionRing fib = load_ring("fibonacci");
  CHECK((Element::parse(fib, "tau") * Element::parse(fib, "tau")) == Element::parse(fib, "1 + tau"));
  const FusionRing z = load_ring("int");
  const Element x = Element::parse(z, "g + g^-1");
  CHECK(x * x == Element::parse(z, "g^2 + 2*e + g^-2"));
  const FusionRing ising = load_ring("ising");
  CHECK((Element::parse(ising, "sigma") * Element::parse(ising, "sigma")) == Element::parse(ising, "1 + psi"));
  CHECK((Element::parse(ising, "psi") * Element::parse(ising, "psi")) == Element::parse(ising, "1"));
  const FusionRing f2 = load_ring("free:2");
  CHECK((Element::parse(f2, "ab") * Element::parse(f2, "BA")) == Element::parse(f2, "e"));
  CHECK_THROWS_AS(Element::parse(fib, "tau") * Element::parse(tl, "a1"), ComputationError);
}

TEST_CASE("star examples and involution laws") {
  const FusionRing z = load_ring("int");
  CHECK(Element::parse(z, "2*g").star() == Element::parse(z, "2*g^-1"));
  const FusionRing tl = load_ring("tl:3");
  CHECK(Element::parse(tl, "a1").star() == Element::parse(tl, "a1"));
  const FusionRing fib = load_ring("fibonacci");
  CHECK(Element::parse(fib, "(1+i)*tau").star() == Element::parse(fib, "(1-i)*tau"));

  Philox4x32 rng(11);
  for (const auto& spec : kCatalog) {
    const FusionRing ring = load_ring(spec);
    for (int trial = 0; trial < 20; ++trial) {
      const Element x = random_element(ring, rng, 2);
      const Element y = random_element(ring, rng, 2);
      CHECK(x.star().star() == x);
      CHECK((x * y).star() == y.star() * x.star());
      CHECK(((x + y) * y) == (x * y + y * y));
      CHECK(((x * y) * x) == (x * (y * x)));
    }
  }
}

TEST_CASE("balls are ordered and nested") {
  const FusionRing z = load_ring("int");
  CHECK(names(z, z.ball(2)) == std::vector<std::string>{"0", "1", "-1", "2", "-2"});
  const FusionRing tl = load_ring("tl:3");
  CHECK(names(tl, tl.ball(3)) == std::vector<std::string>{"a0", "a1", "a2", "a3"});
  const FusionRing fib = load_ring("fibonacci");
  CHECK(names(fib, fib.ball(5)) == std::vector<std::string>{"1", "tau"});
  CHECK(z.ball(0) == std::vector<Label>{z.unit()});
  for (const auto& spec : kCatalog) {
    const FusionRing ring = load_ring(spec);
    for (int r = 0; r < 4; ++r) {
      const auto small = ring.ball(r);
      const auto big = ring.ball(r + 1);
      REQUIRE(small.size() <= big.size());
      CHECK(std::equal(small.begin(), small.end(), big.begin()));
    }
  }
  // free group spheres have 4 * 3^(r-1) elements
  CHECK(load_ring("free:2").ball(3).size() == 1 + 4 + 12 + 36);
}

TEST_CASE("validator passes on the catalog and catches planted defects") {
  for (const auto& spec : kCatalog) {
    const ValidationReport r = validate_axioms(load_ring(spec), 4);
    CHECK_MESSAGE(r.passed(), spec);
  }
  const ValidationReport tl = validate_axioms(load_ring("tl:3"), 8);
  CHECK(tl.passed());
  CHECK(tl.exact_dimensions);

  const ValidationReport bad = validate_axioms(load_ring(std::string(FUSIONLAB_DATA_DIR) + "/fibonacci_bad_conj.fusion"), 3);
  CHECK_FALSE(bad.passed());
  const AxiomResult* unit = bad.find("unit-coefficient");
  REQUIRE(unit != nullptr);
  CHECK_FALSE(unit->passed);
  const FusionRing badring = load_ring(std::string(FUSIONLAB_DATA_DIR) + "/fibonacci_bad_conj.fusion");
  bool tau_tau = false;
  for (const auto& v : unit->violations) tau_tau |= names(badring, v.witness) == std::vector<std::string>{"tau", "tau"};
  CHECK(tau_tau);

  const ValidationReport dbl = validate_axioms(load_ring(std::string(FUSIONLAB_DATA_DIR) + "/fibonacci_double_tau.fusion"), 3);
  CHECK_FALSE(dbl.passed());
  REQUIRE(dbl.find("dimension-multiplicativity") != nullptr);
  CHECK_FALSE(dbl.find("dimension-multiplicativity")->passed);
}

TEST_CASE("dimension row identity on rational rings is exact") {
  for (const std::string spec : {"cyclic:5", "int", "free:2", "tl:3", "tl:2"}) {
    const FusionRing ring = load_ring(spec);
    const auto ball = ring.ball(4);
    for (Label a : ball) {
      for (Label b : ball) {
        Number total(0);
        for (const FusionTerm& t : ring.fuse(a, b)) total += Number(static_cast<long long>(t.multiplicity)) * ring.dim(t.label);
        REQUIRE(total.is_exact());
        CHECK(total == ring.dim(a) * ring.dim(b));
      }
    }
  }
}

TEST_CASE("element parsing") {
  const FusionRing fib = load_ring("fibonacci");
  const Element x = Element::parse(fib, "2*1 - 1/2*tau + 0.25");
  CHECK(x.coefficient(fib.unit()) == Scalar(Rational(9, 4)));
  CHECK(x.coefficient(fib.label("tau")) == Scalar(Rational(-1, 2)));
  CHECK(Element::parse(fib, "0").is_zero());
  CHECK(Element::parse(fib, "tau - tau").is_zero());
  CHECK_THROWS_AS(Element::parse(fib, "3*sigma"), InputError);
  const FusionRing prod = load_ring("product:fibonacci,ising");
  const Element p = Element::parse(prod, "(tau,sigma)");
  CHECK(p.size() == 1);
  CHECK((p * p).size() == 4);
  CHECK(prod.dim_double(prod.label("(tau,sigma)")) == doctest::Approx(std::sqrt(2.0) * (1 + std::sqrt(5.0)) / 2));
}
