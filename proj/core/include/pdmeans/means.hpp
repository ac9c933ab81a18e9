#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdmeans/linalg.hpp"
#include "pdmeans/solver.hpp"

namespace pdmeans {

/// Positive probability vector. Entries must be positive and finite; the
/// vector is renormalized to sum to one at construction.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);
  WeightVector(std::initializer_list<double> weights)
      : WeightVector(std::vector<double>(weights)) {}

  static WeightVector uniform(std::size_t n);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }
  auto begin() const noexcept { return w_.begin(); }
  auto end() const noexcept { return w_.end(); }

 private:
  std::vector<double> w_;
};

/// Ordered, nonempty tuple of positive definite matrices of equal dimension.
class PDTuple {
 public:
  explicit PDTuple(std::vector<PDMatrix> items);
  PDTuple(std::initializer_list<PDMatrix> items) : PDTuple(std::vector<PDMatrix>(items)) {}

  std::size_t size() const noexcept { return items_.size(); }
  int dim() const noexcept { return items_.front().dim(); }
  const PDMatrix& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<PDMatrix>& items() const noexcept { return items_; }

 private:
  std::vector<PDMatrix> items_;
};

/// (A_1^p, ..., A_n^p)
PDTuple powered(const PDTuple& tuple, double p);
/// (c A_1, ..., c A_n), c > 0
PDTuple scaled(const PDTuple& tuple, double c);
/// (M A_1 M*, ..., M A_n M*)
PDTuple congruence(const Matrix& m, const PDTuple& tuple);

/// Smallest lambda_min and largest lambda_max over the tuple: a I <= A_j <= b I.
struct SpectralBounds {
  double lower;
  double upper;
};
SpectralBounds spectral_bounds(const PDTuple& tuple);

void require_same_length(const WeightVector& w, const PDTuple& tuple);

/// Result of an iterative mean computation.
struct MeanResult {
  PDMatrix value;
  SolverReport report;
};

/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}. Any real t is accepted;
/// t in [0, 1] traces the Riemannian geodesic from A to B.
PDMatrix geometric_mean_two(const PDMatrix& a, const PDMatrix& b, double t);

/// sum_j w_j A_j
PDMatrix arithmetic_mean(const WeightVector& w, const PDTuple& tuple);

/// [sum_j w_j A_j^{-1}]^{-1}
PDMatrix harmonic_mean(const WeightVector& w, const PDTuple& tuple);

/// exp(sum_j w_j log A_j)
PDMatrix log_euclidean_mean(const WeightVector& w, const PDTuple& tuple);

/// Matrix power mean P_t for t in [-1, 1] \ {0}.
///
/// For t in (0, 1], the unique solution of X = sum_j w_j X #_t A_j, started at
/// the arithmetic mean. Negative t uses P_t(w; A) = P_{-t}(w; A^{-1})^{-1}.
/// Throws ConvergenceError if the residual does not drop below cfg.tol.
MeanResult power_mean(double t, const WeightVector& w, const PDTuple& tuple,
                      const SolverConfig& cfg = {});

/// Relative residual ||X - sum_j w_j X #_t A_j||_F / ||X||_F, t in (0, 1].
double power_mean_residual(double t, const WeightVector& w, const PDTuple& tuple,
                           const PDMatrix& x);

/// Weighted Cartan (Karcher) mean: the solution of
/// sum_j w_j log(X^{-1/2} A_j X^{-1/2}) = 0.
///
/// Damped Karcher iteration from the log-Euclidean mean. The residual is the
/// Frobenius norm of the sum relative to max(1, sum_j w_j ||log(...)||_F).
MeanResult cartan_mean(const WeightVector& w, const PDTuple& tuple,
                       const SolverConfig& cfg = {});

double cartan_residual(const WeightVector& w, const PDTuple& tuple, const PDMatrix& x);

/// ||log A^{-1/2} B A^{-1/2}||_F
double riemannian_distance(const PDMatrix& a, const PDMatrix& b);
/// ||log A^{-1/2} B A^{-1/2}|| in operator norm
double thompson_distance(const PDMatrix& a, const PDMatrix& b);

}  // namespace pdmeans
