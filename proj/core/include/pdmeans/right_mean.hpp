#pragma once

#include "pdmeans/divergences.hpp"
#include "pdmeans/means.hpp"

namespace pdmeans {

/// The alpha-z weighted right mean: the unique positive definite solution of
///   X = sum_j w_j (X^{alpha/2z} A_j^{(1-alpha)/z} X^{alpha/2z})^z.
///
/// Starts at the arithmetic mean and iterates the map above along geodesic
/// steps extrapolated by 1/(1 - alpha), with Anderson acceleration and
/// adaptive damping (see SolverConfig). A single matrix is returned as is.
///
/// Throws DomainError unless 0 < alpha <= z < 1, DimensionError on length
/// mismatch and ConvergenceError if the residual never drops below cfg.tol.
MeanResult right_mean(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                      const SolverConfig& cfg = {});

/// G(X) = sum_j w_j Q_{1-alpha,z}(X, A_j)
PDMatrix right_mean_map(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                        const PDMatrix& x);

/// ||X - G(X)||_F / ||X||_F
double right_mean_residual(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple,
                           const PDMatrix& x);

/// Defect of the equivalent form X^{1-alpha/z} = sum_j w_j X^{-alpha/z} #_z A_j^{(1-alpha)/z},
/// relative to ||X^{1-alpha/z}||_F. Evaluated through geometric_mean_two, not
/// through right_mean_map.
double right_mean_residual_geomform(const AlphaZ& p, const WeightVector& w,
                                    const PDTuple& tuple, const PDMatrix& x);

}  // namespace pdmeans
