#pragma once

#include <Eigen/Sparse>

#include <complex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionlab/element.hpp"

namespace fusionlab {

/// Compression of lambda(x) to a finite ball: M[b', b] = sum_a c_a N(a,b;b').
struct TruncatedOperator {
  struct Entry {
    std::size_t row;
    std::size_t col;
    Scalar value;
  };

  std::vector<Label> ball;
  std::unordered_map<Label, std::size_t, LabelHash> index;
  std::vector<Entry> entries;  // exact values, sorted by (col, row)
  Eigen::SparseMatrix<std::complex<double>> matrix;
  bool self_adjoint = false;  // star(x) == x
  std::size_t unit_index = 0;  // Lanczos start; 0 when the unit is outside the ball

  std::size_t dim() const { return ball.size(); }
  /// Exact entry lookup (zero when absent).
  Scalar at(std::size_t row, std::size_t col) const;
  /// M[i][j] == M[j][i] for every stored entry (exact in exact mode).
  bool symmetric() const;
  bool hermitian() const;
};

TruncatedOperator lambda_truncation(const Element& x, const std::vector<Label>& ball);

struct LanczosResult {
  double value = 0;   // largest |Ritz value| (a singular value for normal=true)
  int sign = 0;       // sign of the extreme Ritz value, 0 when value is 0
  int iterations = 0;
  bool converged = false;
};

/// Lanczos with full reorthogonalization from delta_1. With normal=true the
/// iteration runs on M^H M and value is the square root of its top Ritz value.
LanczosResult lanczos(const TruncatedOperator& op, int max_iters, double tol = 1e-10, bool normal = false);

inline constexpr int kDefaultMomentBudget = 24;

/// m[n] = coefficient of the unit in x^n, n = 0..n_max.
struct MomentSequence {
  int n_max = 0;
  std::vector<Scalar> m;
};

MomentSequence moments(const Element& x, int n_max, int budget = kDefaultMomentBudget);

/// Three-term recurrence of the spectral measure of a self-adjoint x,
/// computed exactly from its moments. b[k] pairs with the k-th step (b[0]
/// is unused and set to 0). terminated means the measure has finite support
/// and the Jacobi matrix is complete.
struct JacobiRecurrence {
  std::vector<Rational> a;
  std::vector<Rational> b2;
  bool terminated = false;
};

JacobiRecurrence jacobi_from_moments(const std::vector<Rational>& m);

/// Edge of the spectrum predicted by the recurrence: exact Jacobi
/// eigenvalues when terminated, otherwise max(|a + 2b|, |a - 2b|) from the
/// last coefficients.
double jacobi_edge(const JacobiRecurrence& rec);

/// Aitken delta-squared limit of s_n = m[2n]^(1/2n); falls back to the last
/// raw value when the tail is not monotone.
double aitken_moment_limit(const std::vector<Rational>& m);

struct SpectralBudget {
  int ball_radius = 8;
  int lanczos_iters = 300;
  int moment_order = 24;
};

struct NormBounds {
  double lower = 0;
  double upper = 0;
  double heuristic = 0;
  std::string lower_method;
  std::string upper_method;
  std::string heuristic_method;
  int sign = 0;
  bool heuristic_certified = false;

  // diagnostics
  std::size_t ball_size = 0;
  int lanczos_iterations = 0;
  double lanczos_value = 0;
  double moment_root = 0;
  int moment_order_used = 0;
  double aitken = 0;
};

NormBounds estimate_norm(const Element& x, const SpectralBudget& budget = {});

}  // namespace fusionlab
