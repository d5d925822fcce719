#include "fusionlab/multipliers.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fusionlab/error.hpp"

namespace fusionlab {

Multiplier::Multiplier(std::function<Complex(Label)> eval, std::string origin, std::string description)
    : eval_(std::move(eval)), origin_(std::move(origin)), description_(std::move(description)) {}

Multiplier::Multiplier(Support support, std::string origin, std::string description)
    : origin_(std::move(origin)), description_(std::move(description)) {
  std::erase_if(support, [](const auto& kv) { return kv.second == Complex{}; });
  support_ = std::move(support);
}

Complex Multiplier::operator()(Label l) const {
  if (support_) {
    const auto it = support_->find(l);
    return it == support_->end() ? Complex{} : it->second;
  }
  return eval_(l);
}

const Multiplier::Support& Multiplier::support() const {
  if (!support_) throw InputError("multiplier '" + description_ + "' is not finitely supported");
  return *support_;
}

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string format_value(Complex c) {
  if (c.imag() == 0) return format_value(c.real());
  return "(" + format_value(c.real()) + (c.imag() < 0 ? "-" : "+") + format_value(std::abs(c.imag())) + "i)";
}

// Tabulates a rule on a finite ring so that it counts as finitely supported.
Multiplier tabulate(const FusionRing& ring, const std::function<Complex(Label)>& f, std::string origin,
                    std::string description) {
  Multiplier::Support values;
  for (Label l : ring.labels()) values[l] = f(l);
  return Multiplier(std::move(values), std::move(origin), std::move(description));
}

}  // namespace

Multiplier constant_multiplier(const FusionRing& ring, Complex c) {
  const std::string description = "constant:" + format_value(c);
  if (ring.finite()) return tabulate(ring, [c](Label) { return c; }, "constant", description);
  return Multiplier([c](Label) { return c; }, "constant", description);
}

Multiplier delta_multiplier(const FusionRing& ring, Label at) {
  if (!ring.contains(at)) throw InputError("delta label is not in " + ring.spec());
  return Multiplier(Multiplier::Support{{at, Complex{1.0, 0.0}}}, "user", "delta:" + ring.name(at));
}

Multiplier support_multiplier(const FusionRing& ring, const Multiplier::Support& values) {
  std::string description = "support{";
  bool first = true;
  for (const auto& [l, v] : values) {
    if (!ring.contains(l)) throw InputError("support label is not in " + ring.spec());
    description += (first ? "" : ",") + ring.name(l) + ":" + format_value(v);
    first = false;
  }
  description += "}";
  return Multiplier(values, "user", description);
}

Multiplier fejer_multiplier(const FusionRing& ring, int n) {
  if (n < 1) throw InputError("fejer:n needs n >= 1");
  auto value = [ring, n](Label l) {
    const std::size_t len = ring.word_length(l);
    if (len == kUnreachable || len >= static_cast<std::size_t>(n)) return Complex{};
    return Complex{1.0 - static_cast<double>(len) / n, 0.0};
  };
  Multiplier::Support values;
  const std::vector<Label> labels = ring.finite() ? ring.labels() : ring.ball(n - 1);
  for (Label l : labels) values[l] = value(l);
  return Multiplier(std::move(values), "family", "fejer:" + std::to_string(n));
}

Multiplier geometric_multiplier(const FusionRing& ring, double r) {
  auto value = [ring, r](Label l) {
    const std::size_t len = ring.word_length(l);
    if (len == kUnreachable) return Complex{};
    return Complex{std::pow(r, static_cast<double>(len)), 0.0};
  };
  const std::string description = "geometric:" + format_value(r);
  if (ring.finite()) return tabulate(ring, value, "family", description);
  return Multiplier(value, "family", description);
}

Multiplier pointwise_product(const Multiplier& a, const Multiplier& b) {
  const std::string description = "(" + a.description() + ")*(" + b.description() + ")";
  if (a.finitely_supported() || b.finitely_supported()) {
    const Multiplier& finite = a.finitely_supported() ? a : b;
    const Multiplier& other = a.finitely_supported() ? b : a;
    Multiplier::Support values;
    for (const auto& [l, v] : finite.support()) values[l] = v * other(l);
    return Multiplier(std::move(values), "product", description);
  }
  return Multiplier([a, b](Label l) { return a(l) * b(l); }, "product", description);
}

Multiplier pointwise_combine(const std::vector<Complex>& scalars, const std::vector<Multiplier>& terms) {
  if (scalars.size() != terms.size()) throw InputError("pointwise_combine needs one scalar per multiplier");
  std::string description;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    description += (i ? " + " : "") + format_value(scalars[i]) + "*(" + terms[i].description() + ")";
  }
  const bool finite = std::all_of(terms.begin(), terms.end(), [](const Multiplier& m) { return m.finitely_supported(); });
  if (finite) {
    Multiplier::Support values;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (const auto& [l, v] : terms[i].support()) values[l] += scalars[i] * v;
    }
    return Multiplier(std::move(values), "combination", description);
  }
  return Multiplier(
      [scalars, terms](Label l) {
        Complex total{};
        for (std::size_t i = 0; i < terms.size(); ++i) total += scalars[i] * terms[i](l);
        return total;
      },
      "combination", description);
}

Complex omega_apply(const Multiplier& phi, const Element& x) {
  Complex total{};
  for (const auto& [l, c] : x.terms()) total += c.to_complex() * x.ring().dim_double(l) * phi(l);
  return total;
}

GramMatrix gram_matrix(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& ball) {
  GramMatrix gm;
  gm.ball = ball;
  const auto n = static_cast<Eigen::Index>(ball.size());
  gm.g = Eigen::MatrixXcd::Zero(n, n);
  std::unordered_map<Label, Complex, LabelHash> cache;
  auto weight = [&](Label c) {
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, ring.dim_double(c) * phi(c)).first;
    return it->second;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const Label abar = ring.conj(ball[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex total{};
      for (const FusionTerm& t : ring.fuse(abar, ball[static_cast<std::size_t>(j)])) {
        total += static_cast<double>(t.multiplicity) * weight(t.label);
      }
      gm.g(i, j) = total;
    }
  }
  const double scale = std::max(1.0, gm.g.cwiseAbs().maxCoeff());
  gm.hermitian = n == 0 || (gm.g - gm.g.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  return gm;
}

PositivityVerdict fusion_positivity(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& ball,
                                    double tol) {
  PositivityVerdict v;
  v.ball = ball;

  // phi(conj a) = conj phi(a) on the fusion closure of the ball.
  std::set<Label> closure;
  for (Label a : ball) {
    for (Label b : ball) {
      for (const FusionTerm& t : ring.fuse(ring.conj(a), b)) closure.insert(t.label);
    }
  }
  for (Label c : closure) {
    const Complex here = phi(c);
    const Complex there = phi(ring.conj(c));
    if (std::abs(there - std::conj(here)) > 1e-12 * std::max(1.0, std::abs(here))) {
      v.status = "not-positive";
      v.reason = "phi is not Hermitian-symmetric: phi(" + ring.name(ring.conj(c)) + ") != conj phi(" + ring.name(c) + ")";
      return v;
    }
  }

  const GramMatrix gm = gram_matrix(ring, phi, ball);
  if (!gm.hermitian) {
    v.status = "not-positive";
    v.reason = "Gram matrix is not Hermitian";
    return v;
  }
  if (ball.empty()) {
    v.positive = true;
    v.status = "fusion-positive";
    return v;
  }

  Eigen::VectorXd eigenvalues;
  Eigen::VectorXcd lowest;
  if (gm.g.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gm.g.real());
    eigenvalues = solver.eigenvalues();
    lowest = solver.eigenvectors().col(0).cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gm.g);
    eigenvalues = solver.eigenvalues();
    lowest = solver.eigenvectors().col(0);
  }
  v.min_eigenvalue = eigenvalues[0];
  v.scale = eigenvalues.cwiseAbs().maxCoeff();
  v.positive = v.min_eigenvalue >= -tol * v.scale;
  v.status = v.positive ? "fusion-positive" : "not-positive";
  if (!v.positive) {
    // Normalize the phase so the largest coefficient is real positive.
    Eigen::Index k = 0;
    lowest.cwiseAbs().maxCoeff(&k);
    lowest *= std::conj(lowest[k]) / std::abs(lowest[k]);
    v.witness = lowest;
    v.reason = "Gram matrix has a negative eigenvalue";
    const FusionRing complex_ring = ring.with_mode(ArithmeticMode::complex);
    Element x(complex_ring);
    for (std::size_t i = 0; i < ball.size(); ++i) x.add(ball[i], Scalar(lowest[static_cast<Eigen::Index>(i)]));
    v.witness_value = omega_apply(phi, x.star() * x).real();
  }
  return v;
}

double bnorm_lower(const Multiplier& phi, const std::vector<Element>& probes) {
  if (probes.empty()) throw InputError("bnorm_lower needs at least one probe");
  double best = 0;
  for (const Element& x : probes) {
    const double denom = x.l1_dim_norm();
    if (x.is_zero() || denom == 0) continue;
    best = std::max(best, std::abs(omega_apply(phi, x)) / denom);
  }
  return best;
}

ProbeBound default_probe_bound(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& focus) {
  constexpr std::size_t kProbeLabels = 9;
  std::vector<Label> labels;
  auto push = [&](Label l) {
    if (labels.size() < kProbeLabels && std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
  };
  for (Label l : focus) push(l);
  for (Label l : ring.ball(2)) push(l);

  std::vector<Complex> w;
  std::vector<double> d;
  for (Label l : labels) {
    d.push_back(ring.dim_double(l));
    w.push_back(d.back() * phi(l));
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) total *= 3;

  ProbeBound best;
  std::vector<int> digits(labels.size(), 0);
  for (std::size_t code = 1; code < total; ++code) {
    // base-3 increment; digit 2 means coefficient -1
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
    Complex num{};
    double den = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] == 0) continue;
      const double c = digits[i] == 1 ? 1.0 : -1.0;
      num += c * w[i];
      den += d[i];
    }
    const double value = std::abs(num) / den;
    if (value > best.value) {
      best.value = value;
      best.probe.clear();
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] != 0) best.probe.emplace_back(labels[i], digits[i] == 1 ? 1 : -1);
      }
    }
  }
  return best;
}

double uniform_deviation(const Multiplier& phi, const std::vector<Label>& ball) {
  double worst = 0;
  for (Label l : ball) worst = std::max(worst, std::abs(phi(l) - Complex{1.0, 0.0}));
  return worst;
}

}  // namespace fusionlab
