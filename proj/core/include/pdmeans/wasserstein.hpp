#pragma once

#include <optional>
#include <vector>

#include "pdmeans/means.hpp"

namespace pdmeans {

/// K(S) = S^{-1/2} [sum_j w_j (S^{1/2} A_j S^{1/2})^{1/2}]^2 S^{-1/2}
PDMatrix k_map(const WeightVector& w, const PDTuple& tuple, const PDMatrix& s);

struct WassersteinResult {
  PDMatrix value;
  SolverReport report;
  /// tr S_0, tr S_1, ... for every iterate visited, ending with tr of `value`.
  std::vector<double> traces;
};

/// Wasserstein mean via S_{r+1} = K(S_r), from `start` (default: the
/// arithmetic mean). Stops once ||S - K(S)||_F / ||S||_F < cfg.tol and returns
/// that S. `cfg.damping` is not used.
WassersteinResult wasserstein_mean(const WeightVector& w, const PDTuple& tuple,
                                   const SolverConfig& cfg = {},
                                   const std::optional<PDMatrix>& start = std::nullopt);

struct TraceInequality {
  double lhs;
  double rhs;
  bool holds;
};

/// tr R_{1-p/2,1/2}(w; A)^p against tr Omega(w; A^p) for p in [1, 2).
/// holds = lhs <= rhs + 1e-8 (1 + |rhs|).
TraceInequality trace_inequality_check(double p, const WeightVector& w, const PDTuple& tuple,
                                       const SolverConfig& cfg = {});

}  // namespace pdmeans
