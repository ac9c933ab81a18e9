#include "pdmeans/means.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

#include "fixed_point.hpp"
#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

constexpr double kThetaMax = 64.0;
constexpr double kThetaMin = 0x1p-30;

Matrix weighted_sum(const WeightVector& w, const std::vector<Matrix>& terms) {
  Matrix acc = Matrix::Zero(terms.front().rows(), terms.front().cols());
  for (std::size_t j = 0; j < terms.size(); ++j) acc += w[j] * terms[j];
  return acc;
}

std::vector<PDMatrix> square_roots(const PDTuple& tuple) {
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(mpow(a, 0.5));
  return out;
}

// sum_j w_j X #_t A_j, given X^{1/2}, X^{-1/2} and A_j^{1/2}.
PDMatrix power_map(double t, const WeightVector& w, const std::vector<PDMatrix>& roots,
                   const PDMatrix& x) {
  const PDMatrix xh = mpow(x, 0.5);
  const PDMatrix xih = mpow(x, -0.5);
  std::vector<Matrix> terms;
  terms.reserve(roots.size());
  for (const auto& r : roots) {
    const PDMatrix g = gram_power(xih.matrix() * r.matrix(), t);
    terms.push_back(xh.matrix() * g.matrix() * xh.matrix());
  }
  return PDMatrix(hermitian_part(weighted_sum(w, terms)));
}

struct KarcherState {
  HermitianMatrix gradient;
  double cost;
  double grad_norm;
  double residual;
};

KarcherState karcher_state(const WeightVector& w, const std::vector<PDMatrix>& roots,
                           const PDMatrix& x) {
  const PDMatrix xih = mpow(x, -0.5);
  Matrix grad = Matrix::Zero(x.dim(), x.dim());
  double cost = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const HermitianMatrix l = gram_log(xih.matrix() * roots[j].matrix());
    const double n = l.matrix().norm();
    grad += w[j] * l.matrix();
    cost += w[j] * n * n;
    scale += w[j] * n;
  }
  const double gn = grad.norm();
  return {hermitian_part(grad), cost, gn, gn / std::max(1.0, scale)};
}

RealVector log_singular_values(const PDMatrix& a, const PDMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "distance");
  const Matrix m = mpow(a, -0.5).matrix() * mpow(b, 0.5).matrix();
  Eigen::JacobiSVD<Matrix> svd(m);
  return 2.0 * svd.singularValues().array().log().matrix();
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw DimensionError("weight vector must be nonempty");
  for (double v : w_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(fmt::format("weights must be positive and finite, got {}", v));
    }
  }
  const double total = std::accumulate(w_.begin(), w_.end(), 0.0);
  for (double& v : w_) v /= total;
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0));
}

PDTuple::PDTuple(std::vector<PDMatrix> items) : items_(std::move(items)) {
  if (items_.empty()) throw DimensionError("matrix tuple must be nonempty");
  for (const auto& a : items_) require_same_dim(a.dim(), items_.front().dim(), "matrix tuple");
}

PDTuple powered(const PDTuple& tuple, double p) {
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(mpow(a, p));
  return PDTuple(std::move(out));
}

PDTuple scaled(const PDTuple& tuple, double c) {
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(scale(a, c));
  return PDTuple(std::move(out));
}

PDTuple congruence(const Matrix& m, const PDTuple& tuple) {
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(congruence(m, a));
  return PDTuple(std::move(out));
}

SpectralBounds spectral_bounds(const PDTuple& tuple) {
  SpectralBounds b{tuple[0].lambda_min(), tuple[0].lambda_max()};
  for (const auto& a : tuple) {
    b.lower = std::min(b.lower, a.lambda_min());
    b.upper = std::max(b.upper, a.lambda_max());
  }
  return b;
}

void require_same_length(const WeightVector& w, const PDTuple& tuple) {
  if (w.size() != tuple.size()) {
    throw DimensionError(fmt::format("{} weights for {} matrices", w.size(), tuple.size()));
  }
}

PDMatrix geometric_mean_two(const PDMatrix& a, const PDMatrix& b, double t) {
  require_same_dim(a.dim(), b.dim(), "geometric mean");
  if (t == 0.0) return a;
  const PDMatrix ah = mpow(a, 0.5);
  const PDMatrix g = gram_power(mpow(a, -0.5).matrix() * mpow(b, 0.5).matrix(), t);
  return PDMatrix(hermitian_part(ah.matrix() * g.matrix() * ah.matrix()));
}

PDMatrix arithmetic_mean(const WeightVector& w, const PDTuple& tuple) {
  require_same_length(w, tuple);
  Matrix acc = Matrix::Zero(tuple.dim(), tuple.dim());
  for (std::size_t j = 0; j < tuple.size(); ++j) acc += w[j] * tuple[j].matrix();
  return PDMatrix(hermitian_part(acc));
}

PDMatrix harmonic_mean(const WeightVector& w, const PDTuple& tuple) {
  return inverse(arithmetic_mean(w, powered(tuple, -1.0)));
}

PDMatrix log_euclidean_mean(const WeightVector& w, const PDTuple& tuple) {
  require_same_length(w, tuple);
  Matrix acc = Matrix::Zero(tuple.dim(), tuple.dim());
  for (std::size_t j = 0; j < tuple.size(); ++j) acc += w[j] * mlog(tuple[j]).matrix();
  return mexp(hermitian_part(acc));
}

MeanResult power_mean(double t, const WeightVector& w, const PDTuple& tuple,
                      const SolverConfig& cfg) {
  require_same_length(w, tuple);
  cfg.validate();
  if (!(std::abs(t) <= 1.0) || t == 0.0) {
    throw DomainError(fmt::format("power mean parameter must lie in [-1, 1] \\ {{0}}, got {}", t));
  }
  if (t < 0.0) {
    MeanResult r = power_mean(-t, w, powered(tuple, -1.0), cfg);
    return MeanResult{inverse(r.value), std::move(r.report)};
  }
  if (tuple.size() == 1) return MeanResult{tuple[0], SolverReport{}};
  if (t == 1.0) {
    // The map X -> sum_j w_j X #_1 A_j is constant; one step reaches the mean.
    MeanResult r{arithmetic_mean(w, tuple), SolverReport{}};
    r.report.final_residual = power_mean_residual(t, w, tuple, r.value);
    return r;
  }
  const auto roots = square_roots(tuple);
  return detail::solve_fixed_point(
      [&](const PDMatrix& x) { return power_map(t, w, roots, x); }, arithmetic_mean(w, tuple),
      1.0 / t, cfg, "power mean");
}

double power_mean_residual(double t, const WeightVector& w, const PDTuple& tuple,
                           const PDMatrix& x) {
  require_same_length(w, tuple);
  require_same_dim(x.dim(), tuple.dim(), "power mean residual");
  return detail::fixed_point_residual(x, power_map(t, w, square_roots(tuple), x));
}

MeanResult cartan_mean(const WeightVector& w, const PDTuple& tuple, const SolverConfig& cfg) {
  require_same_length(w, tuple);
  cfg.validate();
  if (tuple.size() == 1) return MeanResult{tuple[0], SolverReport{}};

  const auto roots = square_roots(tuple);
  PDMatrix x = log_euclidean_mean(w, tuple);
  KarcherState s = karcher_state(w, roots, x);
  double theta = cfg.damping;
  SolverReport report;

  while (!(s.residual < cfg.tol)) {
    if (report.iterations >= cfg.max_iter || theta < kThetaMin) {
      report.status = theta < kThetaMin ? SolverStatus::diverged
                                        : SolverStatus::max_iter_exceeded;
      report.final_residual = s.residual;
      throw ConvergenceError(fmt::format("cartan mean: no convergence after {} iterations "
                                         "(residual {:.3e}, tol {:.1e})",
                                         report.iterations, s.residual, cfg.tol),
                             std::move(report));
    }
    ++report.iterations;
    const PDMatrix xh = mpow(x, 0.5);
    PDMatrix cand = congruence(xh.matrix(), mexp(theta * s.gradient));
    KarcherState cs = karcher_state(w, roots, cand);
    if (cs.cost <= s.cost || cs.grad_norm < s.grad_norm) {
      x = std::move(cand);
      s = std::move(cs);
      theta = std::min(kThetaMax, theta * 1.5);
    } else {
      theta /= 2.0;
      ++report.damping_activations;
    }
    report.residuals.push_back(s.residual);
  }
  report.status = SolverStatus::converged;
  report.final_residual = s.residual;
  return MeanResult{std::move(x), std::move(report)};
}

double cartan_residual(const WeightVector& w, const PDTuple& tuple, const PDMatrix& x) {
  require_same_length(w, tuple);
  require_same_dim(x.dim(), tuple.dim(), "cartan residual");
  return karcher_state(w, square_roots(tuple), x).residual;
}

double riemannian_distance(const PDMatrix& a, const PDMatrix& b) {
  return log_singular_values(a, b).norm();
}

double thompson_distance(const PDMatrix& a, const PDMatrix& b) {
  return log_singular_values(a, b).cwiseAbs().maxCoeff();
}

}  // namespace pdmeans
