#include "fusionlab/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "fusionlab/error.hpp"

namespace fusionlab {

Scalar TruncatedOperator::at(std::size_t row, std::size_t col) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{col, row}, [](const Entry& e, auto key) {
    return std::pair{e.col, e.row} < key;
  });
  if (it != entries.end() && it->row == row && it->col == col) return it->value;
  return entries.empty() ? Scalar() : Scalar::zero(entries.front().value.mode());
}

bool TruncatedOperator::symmetric() const {
  for (const Entry& e : entries) {
    if (!(at(e.col, e.row) == e.value)) return false;
  }
  return true;
}

bool TruncatedOperator::hermitian() const {
  for (const Entry& e : entries) {
    if (!(at(e.col, e.row) == e.value.conj())) return false;
  }
  return true;
}

TruncatedOperator lambda_truncation(const Element& x, const std::vector<Label>& ball) {
  const FusionRing& ring = x.ring();
  TruncatedOperator op;
  op.ball = ball;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!op.index.emplace(ball[i], i).second) throw InputError("ball contains a repeated label");
  }
  if (const auto it = op.index.find(ring.unit()); it != op.index.end()) op.unit_index = it->second;
  op.self_adjoint = x.star() == x;
  for (std::size_t col = 0; col < ball.size(); ++col) {
    std::map<std::size_t, Scalar> column;
    for (const auto& [alpha, c] : x.terms()) {
      for (const FusionTerm& t : ring.fuse(alpha, ball[col])) {
        const auto it = op.index.find(t.label);
        if (it == op.index.end()) continue;
        const Scalar add = Scalar(static_cast<long long>(t.multiplicity)).in_mode(ring.mode()) * c;
        auto [slot, inserted] = column.try_emplace(it->second, add);
        if (!inserted) slot->second += add;
      }
    }
    for (auto& [row, value] : column) {
      if (!value.is_zero()) op.entries.push_back({row, col, std::move(value)});
    }
  }
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  triplets.reserve(op.entries.size());
  for (const auto& e : op.entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value.to_complex());
  }
  const auto n = static_cast<Eigen::Index>(ball.size());
  op.matrix.resize(n, n);
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

namespace {

// Ritz values of the Lanczos tridiagonal with residual estimates.
struct Ritz {
  double value = 0;  // signed extreme Ritz value
  double residual = 0;
};

Ritz extreme_ritz(const std::vector<double>& alpha, const std::vector<double>& beta, double next_beta) {
  const auto k = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
  Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i + 1 < k; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < k; ++i) {
    if (std::abs(ev[i]) > std::abs(ev[best]) || (std::abs(ev[i]) == std::abs(ev[best]) && ev[i] > ev[best])) best = i;
  }
  return {ev[best], std::abs(next_beta * solver.eigenvectors()(k - 1, best))};
}

template <typename T>
LanczosResult run_lanczos(const Eigen::SparseMatrix<T>& m, std::size_t start, int cap, double tol, bool normal) {
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  const Eigen::Index n = m.rows();
  LanczosResult out;
  if (n == 0 || cap <= 0) return out;
  const Eigen::SparseMatrix<T> mh = m.adjoint();
  auto apply = [&](const Vec& v) -> Vec {
    if (!normal) return m * v;
    const Vec w = m * v;
    return mh * w;
  };

  const int k_max = static_cast<int>(std::min<Eigen::Index>(cap, n));
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> basis(n, k_max);
  Vec v = Vec::Zero(n);
  v[static_cast<Eigen::Index>(start)] = T(1);
  basis.col(0) = v;
  std::vector<double> alpha;
  std::vector<double> beta;
  Ritz ritz;
  int next_check = 1;
  for (int j = 0; j < k_max; ++j) {
    Vec w = apply(basis.col(j));
    const double a = std::real(basis.col(j).dot(w));
    alpha.push_back(a);
    w -= T(a) * basis.col(j);
    if (j > 0) w -= T(beta.back()) * basis.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto q = basis.leftCols(j + 1);
      w -= q * (q.adjoint() * w);
    }
    const double b = w.norm();
    const bool last = j + 1 == k_max || b < 1e-12;
    if (last || j + 1 >= next_check) {
      ritz = extreme_ritz(alpha, beta, b);
      next_check = j + 1 + std::max(1, (j + 1) / 10);
      if (b < 1e-12 || ritz.residual < tol * std::max(1.0, std::abs(ritz.value))) {
        out.converged = true;
        out.iterations = j + 1;
        break;
      }
    }
    out.iterations = j + 1;
    if (last) break;
    beta.push_back(b);
    basis.col(j + 1) = w / T(b);
  }
  if (normal) {
    out.value = std::sqrt(std::max(0.0, ritz.value));
    out.sign = out.value > 0 ? 1 : 0;
  } else {
    out.value = std::abs(ritz.value);
    out.sign = ritz.value > 0 ? 1 : (ritz.value < 0 ? -1 : 0);
  }
  return out;
}

constexpr std::size_t kMomentSupportCap = 4'000'000;
// products (support of x^k) x (terms of x) per power
constexpr std::size_t kMomentWorkCap = 20'000'000;

// Computes moments 0..n_max of x (as far as the support cap allows) and
// returns how many were obtained.
template <typename Coef>
std::vector<Coef> moment_prefix(const FusionRing& ring, const std::vector<std::pair<Label, Coef>>& x, int n_max,
                                const Coef& zero, const Coef& one, bool strict) {
  using Map = std::unordered_map<Label, Coef, LabelHash>;
  std::vector<Map> powers;
  powers.push_back(Map{{ring.unit(), one}});
  const int half = (n_max + 1) / 2;
  for (int k = 1; k <= half; ++k) {
    if (powers.back().size() * x.size() > kMomentWorkCap) {
      if (strict) {
        throw ComputationError("moment computation exceeds the work limit of " + std::to_string(kMomentWorkCap) +
                               " products at power " + std::to_string(k));
      }
      break;
    }
    Map next;
    next.reserve(powers.back().size() * x.size());
    for (const auto& [beta, cb] : powers.back()) {
      for (const auto& [alpha, ca] : x) {
        const Coef prod = cb * ca;
        for (const FusionTerm& t : ring.fuse(beta, alpha)) {
          auto [it, inserted] = next.try_emplace(t.label, zero);
          it->second += Coef(static_cast<long long>(t.multiplicity)) * prod;
        }
      }
    }
    std::erase_if(next, [&](const auto& kv) { return kv.second == zero; });
    if (next.size() > kMomentSupportCap) {
      if (strict) {
        throw ComputationError("moment computation exceeds the support limit of " + std::to_string(kMomentSupportCap) +
                               " labels at power " + std::to_string(k));
      }
      break;
    }
    powers.push_back(std::move(next));
  }
  const int available = std::min(n_max, 2 * (static_cast<int>(powers.size()) - 1));
  std::vector<Coef> m;
  for (int n = 0; n <= available; ++n) {
    const Map& y = powers[static_cast<std::size_t>((n + 1) / 2)];
    const Map& z = powers[static_cast<std::size_t>(n / 2)];
    Coef total = zero;
    const bool y_smaller = y.size() <= z.size();
    for (const auto& [alpha, c] : y_smaller ? y : z) {
      const auto it = (y_smaller ? z : y).find(ring.conj(alpha));
      if (it != (y_smaller ? z : y).end()) total += c * it->second;
    }
    m.push_back(std::move(total));
  }
  return m;
}

std::vector<Scalar> compute_moments(const Element& x, int n_max, bool strict) {
  const FusionRing& ring = x.ring();
  if (ring.mode() != ArithmeticMode::exact) {
    throw ComputationError("moments require exact arithmetic mode");
  }
  if (x.integral()) {
    std::vector<std::pair<Label, Integer>> terms;
    for (const auto& [l, c] : x.terms()) terms.emplace_back(l, Integer(boost::multiprecision::numerator(c.re())));
    const auto ints = moment_prefix<Integer>(ring, terms, n_max, Integer(0), Integer(1), strict);
    std::vector<Scalar> out;
    for (const auto& v : ints) out.emplace_back(Rational(v));
    return out;
  }
  std::vector<std::pair<Label, Scalar>> terms(x.terms().begin(), x.terms().end());
  return moment_prefix<Scalar>(ring, terms, n_max, Scalar(0), Scalar(1), strict);
}

double root(const Rational& value, int n) {
  if (value <= 0) return 0;
  const Decimal d = Decimal(boost::multiprecision::numerator(value)) / Decimal(boost::multiprecision::denominator(value));
  return static_cast<double>(exp(log(d) / n));
}

std::vector<Rational> real_parts(const std::vector<Scalar>& m) {
  std::vector<Rational> out;
  for (const auto& s : m) out.push_back(s.re());
  return out;
}

}  // namespace

LanczosResult lanczos(const TruncatedOperator& op, int max_iters, double tol, bool normal) {
  const bool real = std::all_of(op.entries.begin(), op.entries.end(), [](const auto& e) { return e.value.is_real(); });
  if (real) return run_lanczos<double>(op.matrix.real(), op.unit_index, max_iters, tol, normal);
  return run_lanczos<std::complex<double>>(op.matrix, op.unit_index, max_iters, tol, normal);
}

MomentSequence moments(const Element& x, int n_max, int budget) {
  if (n_max < 0) throw InputError("moment order must be non-negative");
  if (n_max > budget) {
    throw InputError("moment order " + std::to_string(n_max) + " exceeds the budget of " + std::to_string(budget));
  }
  MomentSequence seq;
  seq.n_max = n_max;
  seq.m = compute_moments(x, n_max, true);
  return seq;
}

JacobiRecurrence jacobi_from_moments(const std::vector<Rational>& m) {
  JacobiRecurrence rec;
  const int n_max = static_cast<int>(m.size()) - 1;
  using Poly = std::vector<Rational>;
  auto inner = [&](const Poly& p, const Poly& q) {
    Rational total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      for (std::size_t j = 0; j < q.size(); ++j) total += p[i] * q[j] * m[i + j];
    }
    return total;
  };
  Poly prev{0};
  Poly p{1};
  Rational prev_norm = 0;
  for (int k = 0; 2 * k <= n_max; ++k) {
    const Rational norm = inner(p, p);
    if (norm <= 0) {
      rec.terminated = true;
      break;
    }
    if (k > 0) rec.b2.push_back(norm / prev_norm);
    if (2 * k + 1 > n_max) break;
    Poly xp(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) xp[i + 1] = p[i];
    const Rational a = inner(xp, p) / norm;
    rec.a.push_back(a);
    Poly next = xp;
    for (std::size_t i = 0; i < p.size(); ++i) next[i] -= a * p[i];
    if (k > 0) {
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= rec.b2.back() * prev[i];
    }
    prev = std::move(p);
    p = std::move(next);
    prev_norm = norm;
  }
  return rec;
}

double jacobi_edge(const JacobiRecurrence& rec) {
  if (rec.a.empty()) return 0;
  if (rec.terminated) {
    const auto k = static_cast<Eigen::Index>(rec.a.size());
    Eigen::VectorXd diag(k);
    Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i < k; ++i) diag[i] = to_double(rec.a[static_cast<std::size_t>(i)]);
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub[i] = std::sqrt(to_double(rec.b2[static_cast<std::size_t>(i)]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  const double a = to_double(rec.a.back());
  const double b = rec.b2.empty() ? 0.0 : std::sqrt(to_double(rec.b2.back()));
  return std::max(std::abs(a + 2 * b), std::abs(a - 2 * b));
}

double aitken_moment_limit(const std::vector<Rational>& m) {
  std::vector<double> s;
  for (std::size_t n = 1; 2 * n < m.size(); ++n) s.push_back(root(m[2 * n], static_cast<int>(2 * n)));
  if (s.empty()) return 0;
  if (s.size() < 3) return s.back();
  const double s0 = s[s.size() - 3];
  const double s1 = s[s.size() - 2];
  const double s2 = s[s.size() - 1];
  const double d1 = s1 - s0;
  const double d2 = s2 - s1;
  const double denom = d2 - d1;
  if (!(d1 > 0 && d2 > 0 && d2 < d1) || denom == 0) return s2;
  const double limit = s2 - d2 * d2 / denom;
  return std::isfinite(limit) && limit >= s2 ? limit : s2;
}

NormBounds estimate_norm(const Element& x, const SpectralBudget& budget) {
  NormBounds nb;
  if (x.is_zero()) {
    nb.lower_method = nb.upper_method = nb.heuristic_method = "zero";
    nb.heuristic_certified = true;
    return nb;
  }
  const FusionRing& ring = x.ring();
  const bool self_adjoint = x.star() == x;

  const double l1 = x.l1_dim_norm();
  nb.upper = l1;
  nb.upper_method = "l1-dim";

  std::vector<Label> window;
  if (ring.finite()) {
    window = ring.labels();
    // move the unit to the front so Lanczos starts at delta_1
    const auto it = std::find(window.begin(), window.end(), ring.unit());
    std::rotate(window.begin(), it, it + 1);
  } else {
    window = ring.ball(std::max(budget.ball_radius, 0));
  }
  const TruncatedOperator op = lambda_truncation(x, window);
  nb.ball_size = op.dim();

  if (ring.finite()) {
    // The whole of l2(Irr) is available: the truncation is lambda(x).
    const Eigen::MatrixXcd dense(op.matrix);
    double value = 0;
    int sign = 0;
    if (self_adjoint) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
      const Eigen::VectorXd& ev = solver.eigenvalues();
      const double top = ev[ev.size() - 1];
      const double bottom = ev[0];
      value = std::max(std::abs(top), std::abs(bottom));
      sign = std::abs(top) >= std::abs(bottom) ? (top > 0 ? 1 : 0) : -1;
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
      value = svd.singularValues()[0];
      sign = 1;
    }
    nb.lower = nb.upper = nb.heuristic = value;
    nb.sign = sign;
    nb.lower_method = nb.upper_method = nb.heuristic_method = "dense-full-basis";
    nb.heuristic_certified = true;
    nb.lanczos_value = value;
    return nb;
  }

  const LanczosResult lz = lanczos(op, budget.lanczos_iters, 1e-10, !self_adjoint);
  nb.lanczos_value = lz.value;
  nb.lanczos_iterations = lz.iterations;
  nb.sign = lz.sign;
  nb.lower = lz.value;
  nb.lower_method = "lanczos-ball-" + std::to_string(budget.ball_radius);

  std::vector<Rational> m;
  if (ring.mode() == ArithmeticMode::exact && budget.moment_order > 0) {
    const Element y = self_adjoint ? x : x.star() * x;
    if (!self_adjoint) nb.upper = std::min(l1, std::sqrt(y.l1_dim_norm()));
    m = real_parts(compute_moments(y, budget.moment_order, false));
    nb.moment_order_used = static_cast<int>(m.size()) - 1;
    // tau(y^2n) <= |y|^2n, and for positive y tau(y^n) <= |y|^n.
    for (std::size_t n = 1; n < m.size(); ++n) {
      if (self_adjoint && n % 2 == 1) continue;
      const double r = self_adjoint ? root(m[n], static_cast<int>(n)) : std::sqrt(root(m[n], static_cast<int>(n)));
      if (r > nb.moment_root) {
        nb.moment_root = r;
        if (r > nb.lower) {
          nb.lower = r;
          nb.lower_method = "moment-" + std::to_string(n);
        }
      }
    }
  }

  double heuristic = nb.lower;
  nb.heuristic_method = nb.lower_method;
  if (m.size() >= 3) {
    const JacobiRecurrence rec = jacobi_from_moments(m);
    double edge = jacobi_edge(rec);
    double aitken = aitken_moment_limit(m);
    if (!self_adjoint) {
      edge = std::sqrt(edge);
      aitken = std::sqrt(aitken);
    }
    nb.aitken = aitken;
    heuristic = edge;
    nb.heuristic_method = rec.terminated ? "jacobi-exact" : "jacobi-edge";
  }
  if (nb.lower > nb.upper) nb.lower = nb.upper;
  nb.heuristic = std::clamp(heuristic, nb.lower, nb.upper);
  return nb;
}

}  // namespace fusionlab
