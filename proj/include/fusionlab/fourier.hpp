#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusionlab/multipliers.hpp"

namespace fusionlab {

/// Finitely supported vector in l2(Irr C).
using L2Vector = std::map<Label, Complex>;

double l2_norm(const L2Vector& v);
L2Vector operator-(const L2Vector& a, const L2Vector& b);

/// phi(a) = d(a)^-1 <lambda(a) xi, eta>.
Multiplier coefficient(const FusionRing& ring, const L2Vector& xi, const L2Vector& eta);

struct ANormBudget {
  int ball_radius = -1;  // -1: max word length of supp(f) + 2
  int restarts = 20;
  int iters = 500;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<std::pair<L2Vector, L2Vector>> warm_start;
};

struct ANormBounds {
  double lower = 0;            // certified, duality probes with the l1-d denominator
  double upper = 0;            // certified, best factorization plus residual correction
  double sharpened_lower = 0;  // uncertified, heuristic norms of the probes
  /// f ~ sum_k coefficient(xi_k, eta_k); a single pair unless the convex
  /// relaxation won, in which case the pairs come from an SVD.
  std::vector<std::pair<L2Vector, L2Vector>> witness;
  std::vector<std::pair<Label, int>> lower_probe;

  // optimizer trace
  int ball_radius = 0;
  std::size_t ball_size = 0;
  std::size_t closure_size = 0;
  int starts = 0;
  int feasible_starts = 0;
  std::string best_start;
  double residual = 0;     // sum |f - phi_{xi,eta}| d over the closure
  double factor_norm = 0;  // sum_k |xi_k| |eta_k|

  double gap() const { return upper - lower; }
};

/// Sandwich for the A(C) norm of a finitely supported f. Throws
/// ComputationError when no start reaches feasibility at the ball radius.
ANormBounds anorm_bounds(const FusionRing& ring, const Multiplier& f, const ANormBudget& budget = {});

struct DefectInterval {
  double lower = 0;
  double upper = 0;
  ANormBounds bounds;
};

/// A-norm bounds of phi f - f.
DefectInterval approx_unit_defect(const FusionRing& ring, const Multiplier& phi, const Multiplier& f,
                                  const ANormBudget& budget = {});

}  // namespace fusionlab
