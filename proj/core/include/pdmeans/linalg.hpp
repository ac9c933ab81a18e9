#pragma once

#include <complex>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

namespace pdmeans {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Spectral data of a Hermitian matrix: A = U diag(values) U*.
/// `values` are sorted in descending order; columns of `vectors` follow.
struct EigenDecomposition {
  Matrix vectors;
  RealVector values;

  /// U f(diag(values)) U* for an elementwise function on the spectrum.
  template <typename F>
  Matrix apply(F&& f) const {
    RealVector mapped = values.unaryExpr(std::forward<F>(f));
    return vectors * mapped.asDiagonal() * vectors.adjoint();
  }

  Matrix reconstruct() const;
};

/// Dense complex Hermitian matrix, stored exactly Hermitian.
class HermitianMatrix {
 public:
  /// Validates that `entries` is square and Hermitian to within 1e-12 per
  /// entry (relative to max(1, largest entry)), then stores (M + M*) / 2.
  explicit HermitianMatrix(const Matrix& entries);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(std::span<const double> diag);
  static HermitianMatrix diagonal(std::initializer_list<double> diag);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Trusted {};
  HermitianMatrix(Matrix entries, Trusted);

  friend HermitianMatrix hermitian_part(const Matrix& m);

  Matrix m_;
};

/// (M + M*) / 2 without a tolerance check. Intended for computed results
/// whose Hermitian symmetry is exact up to rounding.
HermitianMatrix hermitian_part(const Matrix& m);

EigenDecomposition eigh(const HermitianMatrix& a);

/// Hermitian positive definite matrix with its cached eigendecomposition.
///
/// Construction rejects (throws DomainError) any matrix whose smallest
/// eigenvalue is not above 1e-12 times the largest eigenvalue.
class PDMatrix {
 public:
  explicit PDMatrix(const HermitianMatrix& a);
  explicit PDMatrix(const Matrix& entries) : PDMatrix(HermitianMatrix(entries)) {}

  /// Build directly from spectral data; `vectors` must be unitary. The
  /// eigenvalues are re-sorted descending.
  static PDMatrix from_spectrum(const Matrix& vectors, const RealVector& values);

  static PDMatrix identity(int dim);
  static PDMatrix diagonal(std::span<const double> diag);
  static PDMatrix diagonal(std::initializer_list<double> diag);

  int dim() const noexcept { return base_.dim(); }
  const Matrix& matrix() const noexcept { return base_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const EigenDecomposition& eigen() const noexcept { return eig_; }
  double lambda_max() const { return eig_.values(0); }
  double lambda_min() const { return eig_.values(eig_.values.size() - 1); }

 private:
  PDMatrix(HermitianMatrix base, EigenDecomposition eig);
  void check_positive() const;

  HermitianMatrix base_;
  EigenDecomposition eig_;
};

/// A^t = U diag(lambda^t) U*. Any real t.
PDMatrix mpow(const PDMatrix& a, double t);
PDMatrix inverse(const PDMatrix& a);
HermitianMatrix mlog(const PDMatrix& a);
PDMatrix mexp(const HermitianMatrix& h);

/// c * A for c > 0, reusing the cached eigenvectors.
PDMatrix scale(const PDMatrix& a, double c);

/// (M M*)^t computed from the singular values of M. M must be square and
/// invertible. Keeps high relative accuracy when M is a product of graded
/// factors such as A^p B^q.
PDMatrix gram_power(const Matrix& m, double t);

/// log(M M*) from the singular values of M. M must be square and invertible.
HermitianMatrix gram_log(const Matrix& m);

/// M A M*.
HermitianMatrix congruence(const Matrix& m, const HermitianMatrix& a);
PDMatrix congruence(const Matrix& m, const PDMatrix& a);

/// Normalized Loewner margin lambda_min(B - A) / (1 + ||B - A||_2).
/// Nonnegative iff A <= B.
double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b);

/// A <= B in the Loewner order, up to the verification slack:
/// lambda_min(B - A) >= -slack * (1 + ||B - A||_2).
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double slack);

double trace(const HermitianMatrix& a);
double det_via_eigs(const PDMatrix& a);
double log_det(const PDMatrix& a);

/// Eigenvalues in descending order.
RealVector eigenvalues(const HermitianMatrix& a);

double frobenius_norm(const Matrix& m);
double spectral_norm(const HermitianMatrix& a);

/// ||A - B||_F / ||B||_F.
double relative_difference(const Matrix& a, const Matrix& b);

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double c, const HermitianMatrix& a);

void require_same_dim(int a, int b, const char* what);

}  // namespace pdmeans
