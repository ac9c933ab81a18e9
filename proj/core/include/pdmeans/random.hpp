#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdmeans/linalg.hpp"

namespace pdmeans {

/// Explicitly advanced random state. Copying an Rng forks the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  std::uint64_t next_u64() { return engine_(); }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform_int(0, static_cast<int>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix (phases of R's diagonal folded into Q).
Matrix random_unitary(Rng& rng, int dim);

/// Q diag(lambda) Q* with Q random unitary and lambda log-uniform on
/// [1/cond, 1]. Requires cond >= 1.
PDMatrix random_pd(Rng& rng, int dim, double cond);
PDMatrix random_pd(std::uint64_t seed, int dim, double cond);

/// Positive weights drawn uniformly from [0.1, 1] and normalized.
std::vector<double> random_weights(Rng& rng, int n);

}  // namespace pdmeans
