#pragma once

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pdmeans/pdmeans.hpp"

namespace pdmeans::testing {

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// max |a - b| / max(1, max |b|)
inline double rel_max_diff(const Matrix& a, const Matrix& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

inline ::testing::AssertionResult MatrixNear(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  const double d = rel_max_diff(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "relative difference " << d << " > " << tol << "\n"
                                       << a << "\nvs\n" << b;
}

inline Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline PDMatrix pd(std::initializer_list<std::initializer_list<double>> rows) {
  return PDMatrix(real_matrix(rows));
}

inline PDMatrix scalar(double a) { return PDMatrix::diagonal({a}); }

inline PDTuple random_tuple(Rng& rng, int dim, int n, double cond) {
  std::vector<PDMatrix> items;
  for (int j = 0; j < n; ++j) items.push_back(random_pd(rng, dim, cond));
  return PDTuple(std::move(items));
}

}  // namespace pdmeans::testing
