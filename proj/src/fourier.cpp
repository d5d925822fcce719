#include "fusionlab/fourier.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "fusionlab/error.hpp"
#include "fusionlab/random.hpp"
#include "fusionlab/spectral.hpp"

namespace fusionlab {

double l2_norm(const L2Vector& v) {
  double total = 0;
  for (const auto& [l, c] : v) total += std::norm(c);
  return std::sqrt(total);
}

L2Vector operator-(const L2Vector& a, const L2Vector& b) {
  L2Vector out = a;
  for (const auto& [l, c] : b) out[l] -= c;
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex{}; });
  return out;
}

Multiplier coefficient(const FusionRing& ring, const L2Vector& xi, const L2Vector& eta) {
  Multiplier::Support values;
  for (const auto& [beta, x] : xi) {
    const Label bbar = ring.conj(beta);
    for (const auto& [gamma, y] : eta) {
      const Complex w = x * std::conj(y);
      // N(a, beta; gamma) = N(gamma, conj beta; a)
      for (const FusionTerm& t : ring.fuse(gamma, bbar)) {
        values[t.label] += w * static_cast<double>(t.multiplicity) / ring.dim_double(t.label);
      }
    }
  }
  return Multiplier(std::move(values), "coefficient", "coefficient(xi, eta)");
}

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using SpMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Constraint c(xi, zeta)[a] = sum w xi_i zeta_j with zeta = conj(eta); it is
// linear in X = xi zeta^T, c = A vec(X) with vec column-major.
struct Problem {
  std::vector<Label> ball;
  std::vector<Label> closure;
  struct Term {
    Eigen::Index a, i, j;
    double w;
  };
  std::vector<Term> terms;
  Vec target;            // f on the closure
  Eigen::VectorXd dims;  // d on the closure
  double outside = 0;    // sum |f| d for support outside the closure

  Eigen::Index nb() const { return static_cast<Eigen::Index>(ball.size()); }
  Eigen::Index nc() const { return static_cast<Eigen::Index>(closure.size()); }

  Vec value(const Vec& xi, const Vec& zeta) const {
    Vec out = Vec::Zero(nc());
    for (const Term& t : terms) out[t.a] += t.w * xi[t.i] * zeta[t.j];
    return out;
  }
  Vec apply(const Mat& x) const {
    Vec out = Vec::Zero(nc());
    for (const Term& t : terms) out[t.a] += t.w * x(t.i, t.j);
    return out;
  }
  Mat apply_adjoint(const Vec& y) const {
    Mat out = Mat::Zero(nb(), nb());
    for (const Term& t : terms) out(t.i, t.j) += t.w * y[t.a];
    return out;
  }
  SpMat jac_xi(const Vec& zeta) const {
    std::vector<Triplet> trips;
    for (const Term& t : terms) trips.emplace_back(t.a, t.i, t.w * zeta[t.j]);
    SpMat out(nc(), nb());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
  }
  SpMat jac_zeta(const Vec& xi) const {
    std::vector<Triplet> trips;
    for (const Term& t : terms) trips.emplace_back(t.a, t.j, t.w * xi[t.i]);
    SpMat out(nc(), nb());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
  }
  SpMat jacobian(const Vec& xi, const Vec& zeta) const {
    std::vector<Triplet> trips;
    for (const Term& t : terms) {
      trips.emplace_back(t.a, t.i, t.w * zeta[t.j]);
      trips.emplace_back(t.a, nb() + t.j, t.w * xi[t.i]);
    }
    SpMat out(nc(), 2 * nb());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
  }
  /// Certified correction: |delta_a|_A <= d(a).
  double residual_of(const Vec& c) const {
    const Vec r = target - c;
    double total = outside;
    for (Eigen::Index a = 0; a < nc(); ++a) total += std::abs(r[a]) * dims[a];
    return total;
  }
  double residual(const Vec& xi, const Vec& zeta) const { return residual_of(value(xi, zeta)); }
};

// Minimum-norm least-squares solution. Moderate systems are factored
// directly; large ones go through the small normal matrix with one round of
// iterative refinement.
Vec min_norm_solve(const SpMat& a, const Vec& b) {
  if (a.rows() * a.cols() <= 4'000'000) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod{Mat(a)};
    cod.setThreshold(1e-13);
    return cod.solve(b);
  }
  const SpMat at = a.adjoint();
  const Mat normal = Mat(at * a);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(normal);
  cod.setThreshold(1e-13);
  Vec x = cod.solve(at * b);
  const Vec r = b - a * x;
  x += cod.solve(at * r);
  return x;
}

Vec ridge_solve(const SpMat& a, const Vec& b, double mu) {
  const SpMat at = a.adjoint();
  Mat normal = Mat(at * a);
  normal.diagonal().array() += mu;
  return normal.ldlt().solve(at * b);
}

// Gauss-Newton steps toward c(xi, zeta) = target with minimal corrections.
void project(const Problem& p, Vec& xi, Vec& zeta) {
  const double scale = std::max(1.0, p.target.norm());
  for (int it = 0; it < 50; ++it) {
    const Vec r = p.target - p.value(xi, zeta);
    if (r.norm() < 1e-14 * scale) return;
    const Vec d = min_norm_solve(p.jacobian(xi, zeta), r);
    xi += d.head(p.nb());
    zeta += d.tail(p.nb());
  }
}

void balance(Vec& xi, Vec& zeta) {
  const double nx = xi.norm();
  const double nz = zeta.norm();
  if (nx == 0 || nz == 0) return;
  const double t = std::sqrt(nz / nx);
  xi *= t;
  zeta /= t;
}

struct StartResult {
  double upper = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  double factor = 0;
  std::vector<std::pair<Vec, Vec>> pairs;  // (xi_k, zeta_k)
  bool feasible = false;
};

constexpr double kFeasible = 1e-8;

StartResult finish(const Problem& p, Vec xi, Vec zeta) {
  StartResult out;
  out.factor = xi.norm() * zeta.norm();
  out.residual = p.residual(xi, zeta);
  out.upper = out.factor + out.residual;
  out.feasible = out.residual < kFeasible;
  out.pairs.emplace_back(std::move(xi), std::move(zeta));
  return out;
}

// One sweep of alternating minimum-norm solves. From a feasible point each
// half-step keeps the constraint and cannot increase |xi||zeta|.
void alternate(const Problem& p, Vec& xi, Vec& zeta) {
  xi = min_norm_solve(p.jac_xi(zeta), p.target);
  zeta = min_norm_solve(p.jac_zeta(xi), p.target);
  balance(xi, zeta);
}

// Joint step w = J^+(b + c(z)) followed by re-projection.
void joint(const Problem& p, Vec& xi, Vec& zeta) {
  const Vec w = min_norm_solve(p.jacobian(xi, zeta), p.target + p.value(xi, zeta));
  xi = w.head(p.nb());
  zeta = w.tail(p.nb());
  project(p, xi, zeta);
  balance(xi, zeta);
}

// Descent from a feasible point, alternating sweeps first and a joint step
// when they stall; stops when neither move improves |xi||zeta|.
StartResult refine(const Problem& p, Vec xi, Vec zeta, int iters) {
  project(p, xi, zeta);
  balance(xi, zeta);
  StartResult best = finish(p, xi, zeta);
  for (int it = 0; it < iters && best.feasible; ++it) {
    bool moved = false;
    for (auto move : {alternate, joint}) {
      Vec nx = best.pairs.front().first;
      Vec nz = best.pairs.front().second;
      move(p, nx, nz);
      StartResult candidate = finish(p, std::move(nx), std::move(nz));
      if (candidate.feasible && candidate.upper < best.upper * (1 - 1e-13)) {
        best = std::move(candidate);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return best;
}

StartResult random_start(const Problem& p, std::uint64_t seed, std::uint64_t stream, int iters) {
  Philox4x32 rng(seed, stream);
  Vec xi(p.nb());
  Vec zeta(p.nb());
  for (Eigen::Index i = 0; i < p.nb(); ++i) xi[i] = rng.normal();
  for (Eigen::Index i = 0; i < p.nb(); ++i) zeta[i] = rng.normal();
  double mu = 1.0;
  for (int it = 0; it < 60; ++it) {
    xi = ridge_solve(p.jac_xi(zeta), p.target, mu);
    zeta = ridge_solve(p.jac_zeta(xi), p.target, mu);
    mu *= 0.7;
  }
  return refine(p, std::move(xi), std::move(zeta), iters);
}

// Certified value of a matrix factorization X = sum sigma_k u_k v_k^H.
StartResult from_matrix(const Problem& p, const Mat& x) {
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  StartResult out;
  Mat kept = Mat::Zero(p.nb(), p.nb());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] <= 1e-15 * s[0] || s[k] == 0) break;
    const double r = std::sqrt(s[k]);
    Vec xi = r * svd.matrixU().col(k);
    Vec zeta = r * svd.matrixV().col(k).conjugate();
    kept += xi * zeta.transpose();
    out.factor += xi.norm() * zeta.norm();
    out.pairs.emplace_back(std::move(xi), std::move(zeta));
  }
  out.residual = p.residual_of(p.apply(kept));
  out.upper = out.factor + out.residual;
  out.feasible = out.residual < kFeasible;
  return out;
}

double nuclear_norm(const Mat& x) { return Eigen::BDCSVD<Mat>(x).singularValues().sum(); }

Mat shrink(const Mat& x, double tau) {
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = (svd.singularValues().array() - tau).max(0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

// Convex relaxation: minimize |X|_* over {A vec X = f} by ADMM with residual
// balancing. Every projected iterate is feasible, so each one is a valid
// certified candidate.
StartResult nuclear_start(const Problem& p, const Mat& x0, int iters) {
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : p.terms) trips.emplace_back(t.a, t.i + p.nb() * t.j, t.w);
  Eigen::SparseMatrix<double> a(p.nc(), p.nb() * p.nb());
  a.setFromTriplets(trips.begin(), trips.end());
  const Eigen::SparseMatrix<double> aat = a * Eigen::SparseMatrix<double>(a.transpose());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(aat);
  if (ldlt.info() != Eigen::Success) return {};
  auto solve = [&](const Vec& y) {
    const Eigen::VectorXd re = ldlt.solve(Eigen::VectorXd(y.real()));
    const Eigen::VectorXd im = ldlt.solve(Eigen::VectorXd(y.imag()));
    Vec out(y.size());
    out.real() = re;
    out.imag() = im;
    return out;
  };
  auto proj = [&](const Mat& z) -> Mat { return z - p.apply_adjoint(solve(p.apply(z) - p.target)); };

  StartResult best = from_matrix(p, x0);
  const double s0 = std::max(best.factor, 1e-300);
  double tau = s0 / 10;
  Mat y = x0;
  Mat u = Mat::Zero(p.nb(), p.nb());
  for (int it = 1; it <= iters; ++it) {
    const Mat x = proj(y - u);
    const Mat y_prev = y;
    y = shrink(x + u, tau);
    u += x - y;
    if (it % 10 == 0 || it == iters) {
      if (nuclear_norm(x) + p.residual_of(p.apply(x)) < best.upper) {
        StartResult c = from_matrix(p, x);
        if (c.upper < best.upper) best = std::move(c);
      }
    }
    const double primal = (x - y).norm();
    const double dual = (y - y_prev).norm();
    if (primal < 1e-13 * s0 && dual < 1e-13 * s0) break;
    if (primal > 10 * dual) {
      tau /= 2;
      u *= 2;
    } else if (dual > 10 * primal) {
      tau *= 2;
      u /= 2;
    }
  }
  return best;
}

Problem build_problem(const FusionRing& ring, const Multiplier& f, std::vector<Label> ball) {
  Problem p;
  p.ball = std::move(ball);
  std::unordered_map<Label, Eigen::Index, LabelHash> closure_index;
  auto closure_slot = [&](Label a) {
    auto [it, inserted] = closure_index.try_emplace(a, static_cast<Eigen::Index>(p.closure.size()));
    if (inserted) p.closure.push_back(a);
    return it->second;
  };
  for (Eigen::Index i = 0; i < p.nb(); ++i) {
    const Label bbar = ring.conj(p.ball[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < p.nb(); ++j) {
      for (const FusionTerm& t : ring.fuse(p.ball[static_cast<std::size_t>(j)], bbar)) {
        const Eigen::Index a = closure_slot(t.label);
        p.terms.push_back({a, i, j, static_cast<double>(t.multiplicity) / ring.dim_double(t.label)});
      }
    }
  }
  p.target = Vec::Zero(p.nc());
  p.dims.resize(p.nc());
  for (Eigen::Index a = 0; a < p.nc(); ++a) {
    p.dims[a] = ring.dim_double(p.closure[static_cast<std::size_t>(a)]);
  }
  for (const auto& [l, v] : f.support()) {
    const auto it = closure_index.find(l);
    if (it == closure_index.end()) {
      p.outside += std::abs(v) * ring.dim_double(l);
    } else {
      p.target[it->second] = v;
    }
  }
  return p;
}

L2Vector to_sparse(const std::vector<Label>& ball, const Vec& v, bool conjugate) {
  L2Vector out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Complex c = conjugate ? std::conj(v[i]) : v[i];
    if (c != Complex{}) out[ball[static_cast<std::size_t>(i)]] = c;
  }
  return out;
}

bool better(const StartResult& a, const StartResult& b) {
  if (a.feasible != b.feasible) return a.feasible;
  return a.feasible ? a.upper < b.upper : a.residual < b.residual;
}

}  // namespace

ANormBounds anorm_bounds(const FusionRing& ring, const Multiplier& f, const ANormBudget& budget) {
  if (!f.finitely_supported()) throw InputError("anorm_bounds needs a finitely supported multiplier");
  if (budget.restarts < 0 || budget.iters < 0) throw InputError("restarts and iters must be non-negative");
  ANormBounds out;
  const auto& support = f.support();
  if (support.empty()) {
    out.best_start = "zero";
    return out;
  }

  std::vector<Label> focus;
  std::size_t max_len = 0;
  for (const auto& [l, v] : support) {
    focus.push_back(l);
    const std::size_t len = ring.word_length(l);
    if (len != kUnreachable) max_len = std::max(max_len, len);
  }
  const ProbeBound probe = default_probe_bound(ring, f, focus);
  out.lower = probe.value;
  out.lower_probe = probe.probe;

  out.ball_radius = budget.ball_radius >= 0 ? budget.ball_radius : static_cast<int>(max_len) + 2;
  std::vector<Label> ball = ring.ball(out.ball_radius);
  // the deterministic start needs conj(supp f) inside the ball
  for (const auto& [l, v] : support) {
    if (std::find(ball.begin(), ball.end(), ring.conj(l)) == ball.end()) ball.push_back(ring.conj(l));
  }
  if (budget.warm_start) {
    for (const L2Vector* v : {&budget.warm_start->first, &budget.warm_start->second}) {
      for (const auto& [l, c] : *v) {
        if (std::find(ball.begin(), ball.end(), l) == ball.end()) ball.push_back(l);
      }
    }
  }
  const Problem p = build_problem(ring, f, ball);
  out.ball_size = p.ball.size();
  out.closure_size = p.closure.size();

  std::vector<std::pair<std::string, StartResult>> results;
  auto meets_lower = [&](const StartResult& r) {
    return r.feasible && r.upper <= out.lower * (1 + 1e-12) + 1e-15;
  };
  auto done = [&] {
    return std::any_of(results.begin(), results.end(), [&](const auto& r) { return meets_lower(r.second); });
  };

  // Deterministic start: eta = delta_1, xi_{conj a} = d(a) f(a).
  Vec xi0 = Vec::Zero(p.nb());
  Vec zeta0 = Vec::Zero(p.nb());
  {
    std::unordered_map<Label, Eigen::Index, LabelHash> index;
    for (Eigen::Index i = 0; i < p.nb(); ++i) index[p.ball[static_cast<std::size_t>(i)]] = i;
    zeta0[index.at(ring.unit())] = 1.0;
    for (const auto& [l, v] : support) xi0[index.at(ring.conj(l))] = ring.dim_double(l) * v;
    results.emplace_back("unit", refine(p, xi0, zeta0, budget.iters));
  }
  if (budget.warm_start) {
    Vec xi = Vec::Zero(p.nb());
    Vec zeta = Vec::Zero(p.nb());
    for (Eigen::Index i = 0; i < p.nb(); ++i) {
      const Label l = p.ball[static_cast<std::size_t>(i)];
      if (auto it = budget.warm_start->first.find(l); it != budget.warm_start->first.end()) xi[i] = it->second;
      if (auto it = budget.warm_start->second.find(l); it != budget.warm_start->second.end()) {
        zeta[i] = std::conj(it->second);
      }
    }
    // keep the supplied pair itself as a candidate
    results.emplace_back("warm", finish(p, xi, zeta));
    results.emplace_back("warm-refined", refine(p, xi, zeta, budget.iters));
  }
  if (!done()) {
    const Mat x0 = xi0 * zeta0.transpose();
    StartResult convex = nuclear_start(p, x0, budget.iters);
    if (convex.pairs.size() == 1) {
      // rank one: polish it as an ordinary factorization
      StartResult polished = refine(p, convex.pairs.front().first, convex.pairs.front().second, budget.iters);
      if (better(polished, convex)) convex = std::move(polished);
    }
    if (!convex.pairs.empty()) results.emplace_back("nuclear", std::move(convex));
  }

  const int threads = std::max(1, budget.threads);
  int next = 0;
  while (next < budget.restarts && !done()) {
    const int batch = std::min(threads, budget.restarts - next);
    std::vector<StartResult> slots(static_cast<std::size_t>(batch));
    auto work = [&](int k) {
      slots[static_cast<std::size_t>(k)] = random_start(p, budget.seed, static_cast<std::uint64_t>(next + k), budget.iters);
    };
    if (batch == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int k = 0; k < batch; ++k) pool.emplace_back(work, k);
      for (auto& t : pool) t.join();
    }
    for (int k = 0; k < batch; ++k) {
      results.emplace_back("random-" + std::to_string(next + k), std::move(slots[static_cast<std::size_t>(k)]));
    }
    next += batch;
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (better(results[k].second, results[best].second)) best = k;
  }
  out.starts = static_cast<int>(results.size());
  out.feasible_starts = static_cast<int>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return r.second.feasible; }));
  const StartResult& winner = results[best].second;
  if (!winner.feasible) {
    throw ComputationError("no feasible factorization at ball radius " + std::to_string(out.ball_radius) +
                           " (best residual " + std::to_string(winner.residual) + "); increase --ball-radius");
  }
  out.best_start = results[best].first;
  out.upper = winner.upper;
  out.residual = winner.residual;
  out.factor_norm = winner.factor;
  for (const auto& [xi, zeta] : winner.pairs) {
    out.witness.emplace_back(to_sparse(p.ball, xi, false), to_sparse(p.ball, zeta, true));
  }
  if (out.lower > out.upper) out.upper = out.lower;

  // Uncertified: |omega_f(x)| / heuristic |lambda(x)| for the best l1 probe
  // and for single labels of the support.
  std::vector<Element> probes;
  if (!probe.probe.empty()) {
    Element x(ring);
    for (const auto& [l, c] : probe.probe) x.add(l, Scalar(c));
    probes.push_back(x);
  }
  for (std::size_t k = 0; k < focus.size() && k < 9; ++k) probes.emplace_back(ring, focus[k]);
  SpectralBudget sb;
  sb.ball_radius = std::min(out.ball_radius + 2, 6);
  sb.lanczos_iters = 200;
  sb.moment_order = 12;
  out.sharpened_lower = out.lower;
  for (const Element& x : probes) {
    const NormBounds nb = estimate_norm(x, sb);
    if (nb.heuristic > 0) out.sharpened_lower = std::max(out.sharpened_lower, std::abs(omega_apply(f, x)) / nb.heuristic);
  }
  return out;
}

DefectInterval approx_unit_defect(const FusionRing& ring, const Multiplier& phi, const Multiplier& f,
                                  const ANormBudget& budget) {
  if (!phi.finitely_supported()) throw InputError("approx_unit_defect needs a finitely supported net member");
  if (!f.finitely_supported()) throw InputError("approx_unit_defect needs a finitely supported test function");
  Multiplier::Support diff;
  for (const auto& [l, v] : f.support()) diff[l] = phi(l) * v - v;
  const Multiplier g(std::move(diff), "defect", "phi*f - f");
  DefectInterval out;
  out.bounds = anorm_bounds(ring, g, budget);
  out.lower = out.bounds.lower;
  out.upper = out.bounds.upper;
  return out;
}

}  // namespace fusionlab
