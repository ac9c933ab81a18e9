#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdmeans/means.hpp"
#include "pdmeans/random.hpp"
#include "pdmeans/right_mean.hpp"
#include "pdmeans/verify.hpp"
#include "pdmeans/wasserstein.hpp"

namespace pdmeans::detail {

/// Sampling state and result sink of one trial.
class TrialContext {
 public:
  TrialContext(std::uint64_t seed, const CheckOptions& opts,
               std::optional<std::pair<double, double>> z_interval, TrialOutcome& out);

  Rng& rng() { return rng_; }
  const CheckOptions& opts() const { return opts_; }

  /// z uniform on the resolved interval, alpha uniform on [min(0.05, z), z].
  AlphaZ sample_alpha_z();
  /// Draws from the configured lists, keeping only values <= cap when cap > 0.
  int sample_dim(int cap = 0);
  int sample_size(int cap = 0);
  double sample_cond();
  PDTuple sample_tuple(int dim, int n, double cond);
  WeightVector sample_weights(int n);
  /// Eigenvalues log-uniform on [1/cond, 1].
  RealVector sample_spectrum(int dim, double cond);

  // Solvers; right-mean calls are recorded in the per-region statistics.
  PDMatrix right(const AlphaZ& p, const WeightVector& w, const PDTuple& tuple);
  PDMatrix power(double t, const WeightVector& w, const PDTuple& tuple);
  PDMatrix cartan(const WeightVector& w, const PDTuple& tuple);
  WassersteinResult wasserstein(const WeightVector& w, const PDTuple& tuple,
                                const std::optional<PDMatrix>& start = std::nullopt);

  /// a <= b in the Loewner order with the configured slack.
  void leq(const std::string& name, const HermitianMatrix& a, const HermitianMatrix& b);
  void leq(const std::string& name, const PDMatrix& a, const PDMatrix& b) {
    leq(name, a.hermitian(), b.hermitian());
  }
  /// ||x - ref||_F / ||ref||_F <= tol.
  void close(const std::string& name, const Matrix& x, const Matrix& ref, double tol);
  /// margin >= -tol.
  void check(const std::string& name, double margin, double tol);
  /// value > 0.
  void strictly_positive(const std::string& name, double value);
  void majorization(const std::string& name, const RealVector& y, const RealVector& x);

 private:
  Rng rng_;
  const CheckOptions& opts_;
  std::optional<std::pair<double, double>> z_interval_;
  TrialOutcome& out_;
};

using TrialBody = void (*)(TrialContext&);

struct TheoremEntry {
  TheoremInfo info;
  /// Interval of z on which the statement is claimed; a requested z range
  /// must lie inside it. Upper ends are exclusive when equal to 1.
  std::optional<std::pair<double, double>> z_claim;
  std::vector<std::string> aliases;
  TrialBody body;
};

const std::vector<TheoremEntry>& theorem_entries();
const TheoremEntry& find_entry(std::string_view id);

/// Sampling interval of z used for the whole divergence domain.
inline constexpr std::pair<double, double> kDomainZ{0.25, 0.95};

}  // namespace pdmeans::detail
