#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionlab/element.hpp"

namespace fusionlab {

using Complex = std::complex<double>;

/// A function phi: Irr(C) -> C. Finitely supported multipliers carry their
/// support explicitly and vanish elsewhere.
class Multiplier {
 public:
  using Support = std::map<Label, Complex>;

  Multiplier(std::function<Complex(Label)> eval, std::string origin, std::string description);
  Multiplier(Support support, std::string origin, std::string description);

  Complex operator()(Label l) const;
  bool finitely_supported() const { return support_.has_value(); }
  /// Nonzero values of a finitely supported multiplier.
  const Support& support() const;
  const std::string& origin() const { return origin_; }
  const std::string& description() const { return description_; }

 private:
  std::function<Complex(Label)> eval_;
  std::optional<Support> support_;
  std::string origin_;
  std::string description_;
};

Multiplier constant_multiplier(const FusionRing& ring, Complex c);
Multiplier delta_multiplier(const FusionRing& ring, Label at);
Multiplier support_multiplier(const FusionRing& ring, const Multiplier::Support& values);
/// max(0, 1 - |a|/n) with |a| the word length.
Multiplier fejer_multiplier(const FusionRing& ring, int n);
/// r^|a|.
Multiplier geometric_multiplier(const FusionRing& ring, double r);

Multiplier pointwise_product(const Multiplier& a, const Multiplier& b);
Multiplier pointwise_combine(const std::vector<Complex>& scalars, const std::vector<Multiplier>& terms);

/// sum_a c_a d(a) phi(a).
Complex omega_apply(const Multiplier& phi, const Element& x);

struct GramMatrix {
  std::vector<Label> ball;
  Eigen::MatrixXcd g;
  bool hermitian = false;
};

/// G[a, b] = omega_phi(conj(a) b) = sum_c N(conj a, b; c) d(c) phi(c).
GramMatrix gram_matrix(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& ball);

struct PositivityVerdict {
  bool positive = false;
  std::string status;  // fusion-positive | not-positive
  std::string reason;
  double min_eigenvalue = 0;
  double scale = 0;  // largest |eigenvalue|
  std::vector<Label> ball;
  Eigen::VectorXcd witness;  // coefficients of x over ball when not positive
  double witness_value = 0;  // omega_phi(x^# x) recomputed by fusion arithmetic
};

/// PSD test of the Gram matrix, a necessary condition for complete
/// positivity only.
PositivityVerdict fusion_positivity(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& ball,
                                    double tol = 1e-9);

/// max |omega_phi(x)| / sum |c_a| d(a) over the probes; zero probes skipped.
double bnorm_lower(const Multiplier& phi, const std::vector<Element>& probes);

struct ProbeBound {
  double value = 0;
  std::vector<std::pair<Label, int>> probe;  // maximizing probe, coefficients in {-1, 1}
};

/// Probes with coefficients in {-1, 0, 1} on the first nine labels of
/// `focus` followed by ball(2), deduplicated.
ProbeBound default_probe_bound(const FusionRing& ring, const Multiplier& phi, const std::vector<Label>& focus);

double uniform_deviation(const Multiplier& phi, const std::vector<Label>& ball);

}  // namespace fusionlab
