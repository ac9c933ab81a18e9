#pragma once

#include "pdmeans/linalg.hpp"

namespace pdmeans {

/// Parameter pair of the divergence and the right mean.
///
/// The regular constructor enforces 0 < alpha <= z < 1. `relaxed` accepts
/// 0 <= alpha <= 1, z > 0 and is only meant for evaluating Q.
class AlphaZ {
 public:
  AlphaZ(double alpha, double z);
  static AlphaZ relaxed(double alpha, double z);

  double alpha() const noexcept { return alpha_; }
  double z() const noexcept { return z_; }
  /// True when 0 < alpha <= z < 1.
  bool in_divergence_domain() const noexcept;

 private:
  struct Unchecked {};
  AlphaZ(double alpha, double z, Unchecked) : alpha_(alpha), z_(z) {}

  double alpha_;
  double z_;
};

/// Q_{alpha,z}(A, B) = (A^{(1-alpha)/2z} B^{alpha/z} A^{(1-alpha)/2z})^z
PDMatrix q_alpha_z(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b);

/// tr Q_{alpha,z}(A, B) from singular values, without forming the matrix.
double q_alpha_z_trace(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b);

/// Phi_{alpha,z}(A, B) = tr((1-alpha)A + alpha B) - tr Q_{alpha,z}(A, B).
/// Requires 0 < alpha <= z < 1 (DomainError otherwise).
double phi_alpha_z(const AlphaZ& p, const PDMatrix& a, const PDMatrix& b);

/// d_W(A, B) = [tr((A + B)/2) - tr (A^{1/2} B A^{1/2})^{1/2}]^{1/2}.
/// A radicand in [-1e-12, 0) is clamped to zero; anything below raises
/// NumericalError.
double bures_wasserstein_distance(const PDMatrix& a, const PDMatrix& b);

/// Log-determinant alpha-divergence for alpha in (-1, 1):
/// 4/(1-alpha^2) [log det((1-alpha)/2 A + (1+alpha)/2 B)
///                - (1-alpha)/2 log det A - (1+alpha)/2 log det B].
double log_det_alpha_divergence(double alpha, const PDMatrix& a, const PDMatrix& b);

}  // namespace pdmeans
