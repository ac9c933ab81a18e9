#include "pdmeans/right_mean.hpp"

#include "fixed_point.hpp"
#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

void require_domain(const AlphaZ& p) {
  if (!p.in_divergence_domain()) {
    throw DomainError("right mean requires 0 < alpha <= z < 1");
  }
}

std::vector<PDMatrix> factor_powers(const AlphaZ& p, const PDTuple& tuple) {
  const double e = (1.0 - p.alpha()) / (2.0 * p.z());
  std::vector<PDMatrix> out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(mpow(a, e));
  return out;
}

PDMatrix apply_map(const AlphaZ& p, const WeightVector& w, const std::vector<PDMatrix>& factors,
                   const PDMatrix& x) {
  const Matrix xp = mpow(x, p.alpha() / (2.0 * p.z())).matrix();
  Matrix acc = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    acc += w[j] * gram_power(xp * factors[j].matrix(), p.z()).matrix();
  }
  return PDMatrix(hermitian_part(acc));
}

void require_shapes(const WeightVector& w, const PDTuple& tuple, const PDMatrix& x) {
  require_same_length(w, tuple);
  require_same_dim(x.dim(), tuple.dim(), "right mean");
}

}  // namespace

MeanResult right_mean(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                      const SolverConfig& cfg) {
  require_domain(p);
  require_same_length(w, tuple);
  cfg.validate();
  if (tuple.size() == 1) return MeanResult{tuple[0], SolverReport{}};
  const auto factors = factor_powers(p, tuple);
  return detail::solve_fixed_point(
      [&](const PDMatrix& x) { return apply_map(p, w, factors, x); }, arithmetic_mean(w, tuple),
      1.0 / (1.0 - p.alpha()), cfg, "right mean");
}

PDMatrix right_mean_map(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                        const PDMatrix& x) {
  require_domain(p);
  require_shapes(w, tuple, x);
  return apply_map(p, w, factor_powers(p, tuple), x);
}

double right_mean_residual(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                           const PDMatrix& x) {
  return detail::fixed_point_residual(x, right_mean_map(p, w, tuple, x));
}

double right_mean_residual_geomform(const AlphaZ& p, const WeightVector& w,
                                    const PDTuple& tuple, const PDMatrix& x) {
  require_domain(p);
  require_shapes(w, tuple, x);
  const double r = p.alpha() / p.z();
  const PDMatrix lhs = mpow(x, 1.0 - r);
  const PDMatrix base = mpow(x, -r);
  Matrix rhs = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    const PDMatrix target = mpow(tuple[j], (1.0 - p.alpha()) / p.z());
    rhs += w[j] * geometric_mean_two(base, target, p.z()).matrix();
  }
  return (lhs.matrix() - rhs).norm() / lhs.matrix().norm();
}

}  // namespace pdmeans
