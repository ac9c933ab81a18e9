#pragma once

#include <functional>

#include "pdmeans/means.hpp"

namespace pdmeans::detail {

using FixedPointMap = std::function<PDMatrix(const PDMatrix&)>;

/// Solves X = G(X) on the positive definite cone.
///
/// Each step moves along the geodesic X #_{theta * tau} G(X); tau is the
/// extrapolation factor that makes the step exact when all data commute
/// (tau = 1 is the plain Picard map). Anderson acceleration (depth 5) runs on
/// top of that step and is only accepted when it lowers the residual and
/// stays positive definite. theta starts at cfg.damping, halves on every
/// rejected step and grows by 1.5 (capped at 1) after two accepted steps in a
/// row. The residual is ||X - G(X)||_F / ||X||_F.
///
/// Throws ConvergenceError (status max_iter_exceeded or diverged).
MeanResult solve_fixed_point(const FixedPointMap& map, PDMatrix x0, double tau,
                             const SolverConfig& cfg, const char* what);

double fixed_point_residual(const PDMatrix& x, const PDMatrix& gx);

}  // namespace pdmeans::detail
