#include "pdmeans/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/core.h>

#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

RealVector sorted_descending(RealVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

void require_comparable(const RealVector& y, const RealVector& x) {
  if (y.size() != x.size() || y.size() == 0) {
    throw DimensionError(
        fmt::format("majorization needs equal nonempty lengths ({} vs {})", y.size(), x.size()));
  }
}

void require_positive(const RealVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > 0.0) || !std::isfinite(v(i))) {
      throw DomainError(fmt::format("log-majorization needs positive entries, got {}", v(i)));
    }
  }
}

// Smallest (Y_k - X_k) / (1 + |Y_k|) over descending prefix sums.
double prefix_margin(const RealVector& y, const RealVector& x, double* total) {
  double sy = 0.0;
  double sx = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    sy += y(k);
    sx += x(k);
    worst = std::min(worst, (sy - sx) / (1.0 + std::abs(sy)));
  }
  if (total) *total = (sy - sx) / (1.0 + std::abs(sy));
  return worst;
}

}  // namespace

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PDMatrix tensor_product(const PDMatrix& a, const PDMatrix& b) {
  return PDMatrix(hermitian_part(tensor_product(a.matrix(), b.matrix())));
}

Matrix hadamard_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(fmt::format("Hadamard product shape mismatch ({}x{} vs {}x{})", a.rows(),
                                     a.cols(), b.rows(), b.cols()));
  }
  return a.cwiseProduct(b);
}

PDMatrix hadamard_product(const PDMatrix& a, const PDMatrix& b) {
  return PDMatrix(hermitian_part(hadamard_product(a.matrix(), b.matrix())));
}

Matrix psi_extract(const Matrix& t) {
  const auto n = t.rows();
  const auto m = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (t.cols() != n || m * m != n || n == 0) {
    throw DimensionError(
        fmt::format("psi_extract needs a square matrix of size m^2, got {}x{}", t.rows(), t.cols()));
  }
  Matrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = t(i * (m + 1), j * (m + 1));
  }
  return out;
}

PDMatrix psi_extract(const PDMatrix& t) { return PDMatrix(hermitian_part(psi_extract(t.matrix()))); }

WeightVector weight_tensor(const WeightVector& w, const WeightVector& mu) {
  std::vector<double> out;
  out.reserve(w.size() * mu.size());
  for (double a : w) {
    for (double b : mu) out.push_back(a * b);
  }
  return WeightVector(std::move(out));
}

PDTuple tuple_tensor(const PDTuple& a, const PDTuple& b) {
  std::vector<PDMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(tensor_product(x, y));
  }
  return PDTuple(std::move(out));
}

PDTuple tuple_hadamard(const PDTuple& a, const PDTuple& b) {
  require_same_dim(a.dim(), b.dim(), "tuple Hadamard product");
  std::vector<PDMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(hadamard_product(x, y));
  }
  return PDTuple(std::move(out));
}

std::string_view to_string(MajorizationKind kind) {
  switch (kind) {
    case MajorizationKind::weak_log:
      return "weak-log";
    case MajorizationKind::weak:
      return "weak";
    case MajorizationKind::log:
      return "log";
  }
  return "unknown";
}

MajorizationVerdict weak_log_majorizes(const RealVector& y, const RealVector& x, double slack) {
  require_comparable(y, x);
  require_positive(y);
  require_positive(x);
  const RealVector ly = sorted_descending(y).array().log().matrix();
  const RealVector lx = sorted_descending(x).array().log().matrix();
  const double m = prefix_margin(ly, lx, nullptr);
  return {MajorizationKind::weak_log, m >= -slack, m};
}

MajorizationVerdict weak_majorizes(const RealVector& y, const RealVector& x, double slack) {
  require_comparable(y, x);
  const double m = prefix_margin(sorted_descending(y), sorted_descending(x), nullptr);
  return {MajorizationKind::weak, m >= -slack, m};
}

MajorizationVerdict log_majorizes(const RealVector& y, const RealVector& x, double slack) {
  require_comparable(y, x);
  require_positive(y);
  require_positive(x);
  const RealVector ly = sorted_descending(y).array().log().matrix();
  const RealVector lx = sorted_descending(x).array().log().matrix();
  double total = 0.0;
  double m = prefix_margin(ly, lx, &total);
  m = std::min(m, -std::abs(total));
  return {MajorizationKind::log, m >= -slack, m};
}

}  // namespace pdmeans
