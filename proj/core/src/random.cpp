#include "pdmeans/random.hpp"

#include <cmath>

#include <fmt/core.h>

#include "pdmeans/error.hpp"

namespace pdmeans {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix random_unitary(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0) q.col(k) *= d / mag;
  }
  return q;
}

PDMatrix random_pd(Rng& rng, int dim, double cond) {
  if (dim < 1) throw DomainError(fmt::format("random_pd: dim must be positive, got {}", dim));
  if (!(cond >= 1.0)) throw DomainError(fmt::format("random_pd: cond must be >= 1, got {}", cond));
  const Matrix q = random_unitary(rng, dim);
  RealVector lambda(dim);
  const double log_lo = -std::log(cond);
  for (int i = 0; i < dim; ++i) {
    lambda(i) = cond == 1.0 ? 1.0 : std::exp(rng.uniform(log_lo, 0.0));
  }
  return PDMatrix::from_spectrum(q, lambda);
}

PDMatrix random_pd(std::uint64_t seed, int dim, double cond) {
  Rng rng(seed);
  return random_pd(rng, dim, cond);
}

std::vector<double> random_weights(Rng& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform(0.1, 1.0);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace pdmeans
