#pragma once

#include <string_view>

#include "pdmeans/means.hpp"

namespace pdmeans {

/// Kronecker product [a_ij B].
Matrix tensor_product(const Matrix& a, const Matrix& b);
PDMatrix tensor_product(const PDMatrix& a, const PDMatrix& b);

/// Entrywise (Schur) product; shapes must agree.
Matrix hadamard_product(const Matrix& a, const Matrix& b);
PDMatrix hadamard_product(const PDMatrix& a, const PDMatrix& b);

/// Principal submatrix of an m^2 x m^2 matrix on the indices i*(m+1),
/// i = 0..m-1. Maps A (x) B to A o B.
Matrix psi_extract(const Matrix& t);
PDMatrix psi_extract(const PDMatrix& t);

/// (w_1 mu_1, ..., w_1 mu_n', w_2 mu_1, ...): entry (i, j) at i*n' + j.
WeightVector weight_tensor(const WeightVector& w, const WeightVector& mu);

/// All ordered products A_i (x) B_j (resp. A_i o B_j) in the same block order.
PDTuple tuple_tensor(const PDTuple& a, const PDTuple& b);
PDTuple tuple_hadamard(const PDTuple& a, const PDTuple& b);

enum class MajorizationKind { weak_log, weak, log };

std::string_view to_string(MajorizationKind kind);

/// Outcome of comparing descending prefix sums (or prefix log-sums).
/// `worst_margin` is min_k (Y_k - X_k) / (1 + |Y_k|) over prefixes (for `log`
/// also -|total gap|); holds iff worst_margin >= -slack.
struct MajorizationVerdict {
  MajorizationKind kind;
  bool holds;
  double worst_margin;
};

/// x weakly log-majorized by y: prod_{i<=k} x_i <= prod_{i<=k} y_i for all k,
/// compared as log prefix sums with additive slack slack * (1 + |prefix of log y|).
/// Entries must be positive.
MajorizationVerdict weak_log_majorizes(const RealVector& y, const RealVector& x,
                                       double slack = 1e-10);

/// x weakly majorized by y: prefix sums of x bounded by those of y.
MajorizationVerdict weak_majorizes(const RealVector& y, const RealVector& x,
                                   double slack = 1e-10);

/// x log-majorized by y: weak log-majorization plus equal total products.
MajorizationVerdict log_majorizes(const RealVector& y, const RealVector& x,
                                  double slack = 1e-10);

}  // namespace pdmeans
