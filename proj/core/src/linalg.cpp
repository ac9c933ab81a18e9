#include "pdmeans/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPositiveTol = 1e-12;

// Reorders an ascending eigen-pair set (Eigen's convention) to descending.
EigenDecomposition descending(const Matrix& vectors, const RealVector& values) {
  const auto n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  EigenDecomposition out{Matrix(vectors.rows(), n), RealVector(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double condition_estimate(const Matrix& m) {
  const RealVector d = m.diagonal().cwiseAbs();
  const double lo = d.minCoeff();
  return lo > 0 ? d.maxCoeff() / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

Matrix EigenDecomposition::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.adjoint();
}

HermitianMatrix::HermitianMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw DimensionError(fmt::format("Hermitian matrix must be square, got {}x{}",
                                     entries.rows(), entries.cols()));
  }
  if (entries.size() == 0) {
    throw DimensionError("Hermitian matrix must have positive dimension");
  }
  if (!entries.allFinite()) {
    throw DomainError("matrix has non-finite entries");
  }
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    throw DomainError(fmt::format("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {:.3g})", asym));
  }
  m_ = (entries + entries.adjoint()) / 2.0;
}

HermitianMatrix::HermitianMatrix(Matrix entries, Trusted) : m_(std::move(entries)) {}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(diag.size()),
                          static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

HermitianMatrix hermitian_part(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("expected a square matrix, got {}x{}", m.rows(), m.cols()));
  }
  return HermitianMatrix((m + m.adjoint()) / 2.0, HermitianMatrix::Trusted{});
}

EigenDecomposition eigh(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw NumericalError(fmt::format("Hermitian eigensolver did not converge (dim {})", a.dim()),
                         a.dim(), condition_estimate(a.matrix()));
  }
  return descending(solver.eigenvectors(), solver.eigenvalues());
}

// ---------------------------------------------------------------------------

PDMatrix::PDMatrix(const HermitianMatrix& a) : base_(a), eig_(eigh(a)) { check_positive(); }

PDMatrix::PDMatrix(HermitianMatrix base, EigenDecomposition eig)
    : base_(std::move(base)), eig_(std::move(eig)) {
  check_positive();
}

void PDMatrix::check_positive() const {
  const double hi = lambda_max();
  const double lo = lambda_min();
  if (!(lo > kPositiveTol * hi) || !std::isfinite(hi)) {
    throw DomainError(fmt::format(
        "matrix is not positive definite (lambda_min = {:.6g}, lambda_max = {:.6g})", lo, hi));
  }
}

PDMatrix PDMatrix::from_spectrum(const Matrix& vectors, const RealVector& values) {
  EigenDecomposition eig = descending(vectors, values);
  HermitianMatrix base = hermitian_part(eig.reconstruct());
  return PDMatrix(std::move(base), std::move(eig));
}

PDMatrix PDMatrix::identity(int dim) {
  return from_spectrum(Matrix::Identity(dim, dim), RealVector::Ones(dim));
}

PDMatrix PDMatrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  RealVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = diag[static_cast<std::size_t>(i)];
  return from_spectrum(Matrix::Identity(n, n), v);
}

PDMatrix PDMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

// ---------------------------------------------------------------------------

PDMatrix mpow(const PDMatrix& a, double t) {
  if (t == 1.0) return a;
  const auto& e = a.eigen();
  return PDMatrix::from_spectrum(e.vectors, e.values.array().pow(t).matrix());
}

PDMatrix inverse(const PDMatrix& a) { return mpow(a, -1.0); }

HermitianMatrix mlog(const PDMatrix& a) {
  return hermitian_part(a.eigen().apply([](double x) { return std::log(x); }));
}

PDMatrix mexp(const HermitianMatrix& h) {
  const EigenDecomposition e = eigh(h);
  return PDMatrix::from_spectrum(e.vectors, e.values.array().exp().matrix());
}

PDMatrix scale(const PDMatrix& a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError(fmt::format("scale factor must be positive, got {}", c));
  }
  const auto& e = a.eigen();
  return PDMatrix::from_spectrum(e.vectors, c * e.values);
}

PDMatrix gram_power(const Matrix& m, double t) {
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("gram_power expects a square matrix, got {}x{}",
                                     m.rows(), m.cols()));
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  if (!s.allFinite()) {
    throw NumericalError("SVD produced non-finite singular values", static_cast<int>(m.rows()),
                         std::numeric_limits<double>::infinity());
  }
  if (!(s.minCoeff() > 0.0)) {
    throw DomainError("gram_power: factor is singular");
  }
  return PDMatrix::from_spectrum(svd.matrixU(), s.array().pow(2.0 * t).matrix());
}

HermitianMatrix gram_log(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("gram_log expects a square matrix, got {}x{}", m.rows(),
                                     m.cols()));
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  if (!s.allFinite() || !(s.minCoeff() > 0.0)) {
    throw DomainError("gram_log: factor is singular");
  }
  const RealVector l = 2.0 * s.array().log().matrix();
  return hermitian_part(svd.matrixU() * l.asDiagonal() * svd.matrixU().adjoint());
}

HermitianMatrix congruence(const Matrix& m, const HermitianMatrix& a) {
  if (m.rows() != m.cols()) {
    throw DimensionError("congruence: transform must be square");
  }
  require_same_dim(static_cast<int>(m.cols()), a.dim(), "congruence");
  return hermitian_part(m * a.matrix() * m.adjoint());
}

PDMatrix congruence(const Matrix& m, const PDMatrix& a) {
  return PDMatrix(congruence(m, a.hermitian()));
}

double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "loewner comparison");
  const RealVector d = eigh(b - a).values;
  const double lo = d(d.size() - 1);
  const double norm = std::max(std::abs(d(0)), std::abs(lo));
  return lo / (1.0 + norm);
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double slack) {
  return loewner_margin(a, b) >= -slack;
}

double trace(const HermitianMatrix& a) { return a.matrix().diagonal().real().sum(); }

double det_via_eigs(const PDMatrix& a) { return a.eigen().values.prod(); }

double log_det(const PDMatrix& a) { return a.eigen().values.array().log().sum(); }

RealVector eigenvalues(const HermitianMatrix& a) { return eigh(a).values; }

double frobenius_norm(const Matrix& m) { return m.norm(); }

double spectral_norm(const HermitianMatrix& a) {
  return eigh(a).values.cwiseAbs().maxCoeff();
}

double relative_difference(const Matrix& a, const Matrix& b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > 0 ? diff / denom : diff;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix sum");
  return hermitian_part(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix difference");
  return hermitian_part(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double c, const HermitianMatrix& a) {
  return hermitian_part(c * a.matrix());
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
  }
}

}  // namespace pdmeans
