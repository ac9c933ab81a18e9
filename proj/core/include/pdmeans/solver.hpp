#pragma once

#include <string_view>
#include <vector>

namespace pdmeans {

struct SolverConfig {
  double tol = 1e-12;   // relative residual threshold
  int max_iter = 500;
  double damping = 1.0; // initial step fraction, in (0, 1]

  /// Throws DomainError unless tol > 0, max_iter >= 1 and 0 < damping <= 1.
  void validate() const;
};

enum class SolverStatus { converged, max_iter_exceeded, diverged };

std::string_view to_string(SolverStatus status);

/// Convergence record shared by all fixed-point solvers.
///
/// `residuals[k]` is the residual of the accepted iterate after iteration k+1,
/// so `residuals.size() == iterations`. A solver that starts at its fixed
/// point reports zero iterations.
struct SolverReport {
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residuals;
  SolverStatus status = SolverStatus::converged;
  int damping_activations = 0;  // rejected steps (theta halved)
};

}  // namespace pdmeans
