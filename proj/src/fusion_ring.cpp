#include "fusionlab/fusion_ring.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "fusionlab/error.hpp"

namespace fusionlab {

FusionRing::FusionRing(std::shared_ptr<const FusionRule> rule, ArithmeticMode mode)
    : rule_(std::move(rule)), mode_(mode) {
  if (!rule_) throw InputError("null fusion rule");
}

std::uint64_t FusionRing::multiplicity(Label a, Label b, Label c) const {
  const FusionRow row = fuse(a, b);
  const auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const FusionTerm& t, Label l) { return t.label < l; });
  return it != row.end() && it->label == c ? it->multiplicity : 0;
}

Label FusionRing::label(std::string_view text) const {
  if (auto l = rule_->parse(text)) return *l;
  throw InputError("label '" + std::string(text) + "' is not in ring " + spec());
}

std::vector<Label> FusionRing::ball(const std::vector<Label>& generators, int radius) const {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  std::vector<Label> steps;
  for (Label g : generators) {
    if (!contains(g)) throw InputError("generator is not a label of " + spec());
    steps.push_back(g);
    steps.push_back(conj(g));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  std::vector<Label> out{unit()};
  std::unordered_set<Label, LabelHash> seen{unit()};
  std::vector<Label> layer{unit()};
  for (int r = 1; r <= radius && !layer.empty(); ++r) {
    std::vector<Label> next;
    for (Label beta : layer) {
      for (Label s : steps) {
        for (const FusionTerm& t : fuse(s, beta)) {
          if (seen.insert(t.label).second) next.push_back(t.label);
        }
      }
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

bool ValidationReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* ValidationReport::find(std::string_view name) const {
  for (const auto& a : axioms) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

namespace {

constexpr std::size_t kFullAssociativityTriples = 2'000'000;
constexpr double kDimensionTolerance = 1e-9;

std::uint64_t lookup(const FusionRow& row, Label c) {
  const auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const FusionTerm& t, Label l) { return t.label < l; });
  return it != row.end() && it->label == c ? it->multiplicity : 0;
}

class Checker {
 public:
  Checker(const FusionRing& ring, std::string name, std::string identity) : ring_(ring) {
    result_.name = std::move(name);
    result_.identity = std::move(identity);
  }

  void check(bool ok, std::vector<Label> witness, const std::function<std::string()>& lhs,
             const std::function<std::string()>& rhs) {
    ++result_.checked;
    if (ok) return;
    result_.passed = false;
    ++result_.violation_count;
    if (result_.violations.size() < kMaxListedViolations) {
      result_.violations.push_back({std::move(witness), lhs(), rhs()});
    }
  }

  std::string n(Label a, Label b, Label c, std::uint64_t value) const {
    return "N(" + ring_.name(a) + "," + ring_.name(b) + ";" + ring_.name(c) + ")=" + std::to_string(value);
  }

  AxiomResult take() { return std::move(result_); }

 private:
  const FusionRing& ring_;
  AxiomResult result_;
};

std::string row_string(const FusionRing& ring, const std::map<Label, std::uint64_t>& row) {
  if (row.empty()) return "0";
  std::string s;
  for (const auto& [label, mult] : row) {
    if (!s.empty()) s += " + ";
    if (mult != 1) s += std::to_string(mult) + "*";
    s += ring.name(label);
  }
  return s;
}

std::string row_string(const FusionRing& ring, const FusionRow& row) {
  std::map<Label, std::uint64_t> m;
  for (const auto& t : row) m[t.label] = t.multiplicity;
  return row_string(ring, m);
}

}  // namespace

ValidationReport validate_axioms(const FusionRing& ring, int radius) {
  ValidationReport report;
  report.radius = radius;
  report.tolerance = kDimensionTolerance;
  const std::vector<Label> ball = ring.ball(radius);
  report.ball_size = ball.size();
  const Label one = ring.unit();

  std::vector<Number> dims;
  dims.reserve(ball.size());
  for (Label a : ball) {
    dims.push_back(ring.dim(a));
    if (!dims.back().is_exact()) report.exact_dimensions = false;
  }

  Checker involution(ring, "conj-involution", "conj(conj(a)) = a, conj(1) = 1");
  involution.check(ring.conj(one) == one, {one}, [&] { return "conj(" + ring.name(one) + ")"; },
                   [&] { return ring.name(ring.conj(one)); });
  for (Label a : ball) {
    const Label back = ring.conj(ring.conj(a));
    involution.check(back == a, {a}, [&] { return "conj(conj(" + ring.name(a) + "))=" + ring.name(back); },
                     [&] { return ring.name(a); });
  }

  Checker unit_law(ring, "unit-law", "1*a = a*1 = a");
  for (Label a : ball) {
    const FusionRow expected{{a, 1}};
    const FusionRow left = ring.fuse(one, a);
    const FusionRow right = ring.fuse(a, one);
    unit_law.check(left == expected, {one, a}, [&] { return row_string(ring, left); },
                   [&] { return ring.name(a); });
    unit_law.check(right == expected, {a, one}, [&] { return row_string(ring, right); },
                   [&] { return ring.name(a); });
  }

  Checker dimension(ring, "dimension-positivity", "d(1) = 1, d(a) = d(conj a) >= 1");
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Label a = ball[i];
    const Number& d = dims[i];
    const Number dc = ring.dim(ring.conj(a));
    bool ok = approx_equal(d, dc, kDimensionTolerance) &&
              (approx_equal(d, Number(1), kDimensionTolerance) || Number(1) < d);
    if (a == one) ok = ok && approx_equal(d, Number(1), kDimensionTolerance);
    dimension.check(ok, {a}, [&] { return "d(" + ring.name(a) + ")=" + d.str(); },
                    [&] { return "d(conj)=" + dc.str(); });
  }

  Checker unit_coefficient(ring, "unit-coefficient", "N(a,b;1) = [b = conj a]");
  Checker frobenius(ring, "frobenius-reciprocity", "N(a,b;c) = N(conj a,c;b) = N(c,conj b;a)");
  Checker multiplicativity(ring, "dimension-multiplicativity", "d(a)d(b) = sum_c N(a,b;c) d(c)");
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Label a = ball[i];
    const Label abar = ring.conj(a);
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const Label b = ball[j];
      const Label bbar = ring.conj(b);
      const FusionRow row = ring.fuse(a, b);

      const std::uint64_t n1 = lookup(row, one);
      const std::uint64_t want = b == abar ? 1 : 0;
      unit_coefficient.check(n1 == want, {a, b}, [&] { return frobenius.n(a, b, one, n1); },
                             [&] { return std::to_string(want); });

      Number total(0);
      for (const FusionTerm& t : row) {
        const Label c = t.label;
        const std::uint64_t n2 = ring.multiplicity(abar, c, b);
        const std::uint64_t n3 = ring.multiplicity(c, bbar, a);
        frobenius.check(n2 == t.multiplicity && n3 == t.multiplicity, {a, b, c},
                        [&] { return frobenius.n(a, b, c, t.multiplicity); },
                        [&] { return frobenius.n(abar, c, b, n2) + ", " + frobenius.n(c, bbar, a, n3); });
        total += Number(static_cast<long long>(t.multiplicity)) * ring.dim(c);
      }
      const Number product = dims[i] * dims[j];
      multiplicativity.check(approx_equal(total, product, kDimensionTolerance), {a, b},
                             [&] { return "sum=" + total.str(); }, [&] { return "d(a)d(b)=" + product.str(); });
    }
  }

  Checker associativity(ring, "associativity", "(ab)c = a(bc)");
  std::vector<Label> third;
  if (ball.size() * ball.size() * ball.size() <= kFullAssociativityTriples) {
    report.associativity_scope = "full";
    third = ball;
  } else {
    report.associativity_scope = "generator-triples";
    for (Label g : ring.generators()) {
      third.push_back(g);
      third.push_back(ring.conj(g));
    }
    std::sort(third.begin(), third.end());
    third.erase(std::unique(third.begin(), third.end()), third.end());
  }
  for (Label a : ball) {
    for (Label b : ball) {
      const FusionRow ab = ring.fuse(a, b);
      for (Label c : third) {
        std::map<Label, std::uint64_t> left;
        for (const FusionTerm& e : ab) {
          for (const FusionTerm& t : ring.fuse(e.label, c)) left[t.label] += e.multiplicity * t.multiplicity;
        }
        std::map<Label, std::uint64_t> right;
        for (const FusionTerm& e : ring.fuse(b, c)) {
          for (const FusionTerm& t : ring.fuse(a, e.label)) right[t.label] += e.multiplicity * t.multiplicity;
        }
        associativity.check(left == right, {a, b, c}, [&] { return row_string(ring, left); },
                            [&] { return row_string(ring, right); });
      }
    }
  }

  report.axioms.push_back(involution.take());
  report.axioms.push_back(unit_law.take());
  report.axioms.push_back(unit_coefficient.take());
  report.axioms.push_back(frobenius.take());
  report.axioms.push_back(associativity.take());
  report.axioms.push_back(dimension.take());
  report.axioms.push_back(multiplicativity.take());
  return report;
}

}  // namespace fusionlab
