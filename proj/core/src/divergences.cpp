#include "pdmeans/divergences.hpp"

#include <cmath>

#include <fmt/core.h>

#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

constexpr double kRadicandBand = 1e-12;

// Singular values of A^{(1-alpha)/2z} B^{alpha/2z}; Q = U diag(s^{2z}) U*.
Eigen::JacobiSVD<Matrix> q_factor_svd(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b,
                                      int options) {
  require_same_dim(a.dim(), b.dim(), "Q_{alpha,z}");
  const double ea = (1.0 - p.alpha()) / (2.0 * p.z());
  const double eb = p.alpha() / (2.0 * p.z());
  return Eigen::JacobiSVD<Matrix>(mpow(a, ea).matrix() * mpow(b, eb).matrix(), options);
}

}  // namespace

AlphaZ::AlphaZ(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!in_divergence_domain()) {
    throw DomainError(
        fmt::format("(alpha, z) = ({}, {}) outside the domain 0 < alpha <= z < 1", alpha, z));
  }
}

AlphaZ AlphaZ::relaxed(double alpha, double z) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(
        fmt::format("(alpha, z) = ({}, {}) requires 0 <= alpha <= 1 and z > 0", alpha, z));
  }
  return AlphaZ(alpha, z, Unchecked{});
}

bool AlphaZ::in_divergence_domain() const noexcept {
  return alpha_ > 0.0 && alpha_ <= z_ && z_ < 1.0;
}

PDMatrix q_alpha_z(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "Q_{alpha,z}");
  const double ea = (1.0 - p.alpha()) / (2.0 * p.z());
  const double eb = p.alpha() / (2.0 * p.z());
  return gram_power(mpow(a, ea).matrix() * mpow(b, eb).matrix(), p.z());
}

double q_alpha_z_trace(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b) {
  const auto svd = q_factor_svd(p, a, b, 0);
  return svd.singularValues().array().pow(2.0 * p.z()).sum();
}

double phi_alpha_z(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b) {
  if (!p.in_divergence_domain()) {
    throw DomainError(fmt::format("Phi requires 0 < alpha <= z < 1, got ({}, {})", p.alpha(),
                                  p.z()));
  }
  const double linear = (1.0 - p.alpha()) * trace(a.hermitian()) + p.alpha() * trace(b.hermitian());
  return linear - q_alpha_z_trace(p, a, b);
}

double bures_wasserstein_distance(const PDMatrix& a, const PDMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "Bures-Wasserstein distance");
  // tr (A^{1/2} B A^{1/2})^{1/2} is the sum of singular values of A^{1/2} B^{1/2}.
  Eigen::JacobiSVD<Matrix> svd(mpow(a, 0.5).matrix() * mpow(b, 0.5).matrix());
  const double radicand =
      0.5 * (trace(a.hermitian()) + trace(b.hermitian())) - svd.singularValues().sum();
  if (radicand >= 0.0) return std::sqrt(radicand);
  if (radicand >= -kRadicandBand) return 0.0;
  throw NumericalError(fmt::format("Bures-Wasserstein radicand is negative ({:.3e})", radicand),
                       a.dim(), a.lambda_max() / a.lambda_min());
}

double log_det_alpha_divergence(double alpha, const PDMatrix& a, const PDMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "log-determinant divergence");
  if (!(alpha > -1.0 && alpha < 1.0)) {
    throw DomainError(fmt::format("log-determinant divergence needs alpha in (-1, 1), got {}", alpha));
  }
  const double ca = (1.0 - alpha) / 2.0;
  const double cb = (1.0 + alpha) / 2.0;
  const PDMatrix mix(hermitian_part(ca * a.matrix() + cb * b.matrix()));
  const double gap = log_det(mix) - ca * log_det(a) - cb * log_det(b);
  return 4.0 / (1.0 - alpha * alpha) * gap;
}

}  // namespace pdmeans
