#include "pdmeans/wasserstein.hpp"

#include <cmath>

#include <fmt/core.h>

#include "pdmeans/error.hpp"
#include "pdmeans/right_mean.hpp"

namespace pdmeans {

namespace {

constexpr double kTraceSlack = 1e-8;

PDMatrix apply_k(const WeightVector& w, const std::vector<PDMatrix>& roots, const PDMatrix& s) {
  const Matrix sh = mpow(s, 0.5).matrix();
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (std::size_t j = 0; j < roots.size(); ++j) {
    m += w[j] * gram_power(sh * roots[j].matrix(), 0.5).matrix();
  }
  // M is Hermitian, so S^{-1/2} M^2 S^{-1/2} = (S^{-1/2} M)(S^{-1/2} M)*.
  return gram_power(mpow(s, -0.5).matrix() * hermitian_part(m).matrix(), 1.0);
}

std::vector<PDMatrix> roots_of(const PDTuple& tuple) {
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(mpow(a, 0.5));
  return out;
}

}  // namespace

PDMatrix k_map(const WeightVector& w, const PDTuple& tuple, const PDMatrix& s) {
  require_same_length(w, tuple);
  require_same_dim(s.dim(), tuple.dim(), "K map");
  return apply_k(w, roots_of(tuple), s);
}

WassersteinResult wasserstein_mean(const WeightVector& w, const PDTuple& tuple,
                                   const SolverConfig& cfg, const std::optional<PDMatrix>& start) {
  require_same_length(w, tuple);
  cfg.validate();
  if (start) require_same_dim(start->dim(), tuple.dim(), "wasserstein start");

  const auto roots = roots_of(tuple);
  PDMatrix s = start ? *start : arithmetic_mean(w, tuple);
  PDMatrix ks = apply_k(w, roots, s);
  double residual = (s.matrix() - ks.matrix()).norm() / s.matrix().norm();

  WassersteinResult out{s, SolverReport{}, {trace(s.hermitian())}};
  while (!(residual < cfg.tol)) {
    if (out.report.iterations >= cfg.max_iter) {
      out.report.status = SolverStatus::max_iter_exceeded;
      out.report.final_residual = residual;
      throw ConvergenceError(fmt::format("wasserstein mean: no convergence after {} iterations "
                                         "(residual {:.3e}, tol {:.1e})",
                                         out.report.iterations, residual, cfg.tol),
                             std::move(out.report));
    }
    s = std::move(ks);
    ks = apply_k(w, roots, s);
    residual = (s.matrix() - ks.matrix()).norm() / s.matrix().norm();
    ++out.report.iterations;
    out.report.residuals.push_back(residual);
    out.traces.push_back(trace(s.hermitian()));
  }
  out.report.status = SolverStatus::converged;
  out.report.final_residual = residual;
  out.value = std::move(s);
  return out;
}

TraceInequality trace_inequality_check(double p, const WeightVector& w, const PDTuple& tuple,
                                       const SolverConfig& cfg) {
  if (!(p >= 1.0 && p < 2.0)) {
    throw DomainError(fmt::format("trace inequality exponent must lie in [1, 2), got {}", p));
  }
  const MeanResult r = right_mean(AlphaZ(1.0 - p / 2.0, 0.5), w, tuple, cfg);
  const double lhs = r.value.eigen().values.array().pow(p).sum();
  const double rhs = trace(wasserstein_mean(w, powered(tuple, p), cfg).value.hermitian());
  return {lhs, rhs, lhs <= rhs + kTraceSlack * (1.0 + std::abs(rhs))};
}

}  // namespace pdmeans
