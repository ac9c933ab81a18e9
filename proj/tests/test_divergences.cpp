#include <cmath>

#include "support.hpp"

namespace pdmeans {
namespace {

using testing::MatrixNear;
using testing::pd;
using testing::real_matrix;
using testing::scalar;

// Frozen reference values computed at 50 significant digits from the
// eigendecomposition-based definition.
const Matrix kRefA = real_matrix({{4, 1, 0}, {1, 3, 0.5}, {0, 0.5, 2}});
const Matrix kRefB = real_matrix({{2, -1, 0}, {-1, 5, 1}, {0, 1, 1}});

TEST(QAlphaZ, FrozenHighPrecisionReference) {
  const PDMatrix a(kRefA);
  const PDMatrix b(kRefB);
  const Matrix q1 = real_matrix({{3.1105433460233800695, 0.36418471666902409463, 0.057003498914531435067},
                                 {0.36418471666902409463, 3.3530548527721350828, 0.66701563316130902508},
                                 {0.057003498914531435067, 0.66701563316130902508, 1.5995426335175997876}});
  const Matrix q2 = real_matrix({{3.377678742595637529, 0.57203512971716270107, 0.037489105050605257261},
                                 {0.57203512971716270107, 3.205751218808676607, 0.61657493398376813183},
                                 {0.037489105050605257261, 0.61657493398376813183, 1.7255592856159181877}});
  EXPECT_TRUE(MatrixNear(q_alpha_z(AlphaZ(0.3, 0.6), a, b).matrix(), q1, 1e-13));
  EXPECT_TRUE(MatrixNear(q_alpha_z(AlphaZ(0.2, 0.4), a, b).matrix(), q2, 1e-13));
  EXPECT_NEAR(phi_alpha_z(AlphaZ(0.3, 0.6), a, b), 0.63685916768688506007, 1e-13);
  EXPECT_NEAR(phi_alpha_z(AlphaZ(0.2, 0.4), a, b), 0.49101075297976767629, 1e-13);
  EXPECT_NEAR(q_alpha_z_trace(AlphaZ(0.3, 0.6), a, b), q1.trace().real(), 1e-13);
}

TEST(QAlphaZ, Examples) {
  const PDMatrix a = random_pd(1, 3, 1e3);
  for (const AlphaZ& p : {AlphaZ(0.3, 0.6), AlphaZ(0.5, 0.5), AlphaZ::relaxed(1.0, 2.0)}) {
    EXPECT_TRUE(MatrixNear(q_alpha_z(p, a, a).matrix(), a.matrix(), 1e-10));
  }
  EXPECT_TRUE(MatrixNear(q_alpha_z(AlphaZ(0.5, 0.5), PDMatrix::diagonal({4.0, 9.0}),
                                   PDMatrix::diagonal({9.0, 4.0}))
                             .matrix(),
                         HermitianMatrix::diagonal({6.0, 6.0}).matrix(), 1e-14));
  const PDMatrix b = random_pd(2, 3, 100.0);
  EXPECT_TRUE(MatrixNear(q_alpha_z(AlphaZ(1.0 / 3.0, 0.5), PDMatrix::identity(3), b).matrix(),
                         mpow(b, 1.0 / 3.0).matrix(), 1e-12));
}

TEST(QAlphaZ, MatchesDirectDefinition) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = rng.uniform_int(2, 4);
    const PDMatrix a = random_pd(rng, dim, 100.0);
    const PDMatrix b = random_pd(rng, dim, 100.0);
    const double z = rng.uniform(0.25, 1.5);
    const double alpha = rng.uniform(0.0, 1.0);
    const Matrix l = mpow(a, (1 - alpha) / (2 * z)).matrix();
    const PDMatrix inner(hermitian_part(l * mpow(b, alpha / z).matrix() * l));
    EXPECT_LE(relative_difference(q_alpha_z(AlphaZ::relaxed(alpha, z), a, b).matrix(),
                                  mpow(inner, z).matrix()),
              1e-9);
  }
}

TEST(AlphaZ, DomainRules) {
  EXPECT_NO_THROW(AlphaZ(0.5, 0.5));
  EXPECT_THROW(AlphaZ(0.6, 0.5), DomainError);
  EXPECT_THROW(AlphaZ(0.0, 0.5), DomainError);
  EXPECT_THROW(AlphaZ(0.5, 1.0), DomainError);
  EXPECT_THROW(AlphaZ::relaxed(1.2, 0.5), DomainError);
  EXPECT_THROW(AlphaZ::relaxed(0.5, 0.0), DomainError);
  EXPECT_TRUE(AlphaZ(0.2, 0.4).in_divergence_domain());
  EXPECT_FALSE(AlphaZ::relaxed(0.9, 0.4).in_divergence_domain());
  EXPECT_THROW(phi_alpha_z(AlphaZ::relaxed(0.9, 0.4), PDMatrix::identity(2), PDMatrix::identity(2)),
               DomainError);
}

TEST(Phi, Examples) {
  const PDMatrix a = random_pd(4, 3, 100.0);
  EXPECT_NEAR(phi_alpha_z(AlphaZ(0.3, 0.7), a, a), 0.0, 1e-12);
  EXPECT_NEAR(phi_alpha_z(AlphaZ(0.5, 0.5), scalar(1.0), scalar(4.0)), 0.5, 1e-15);
  const PDMatrix b = random_pd(5, 3, 100.0);
  const double dw = bures_wasserstein_distance(a, b);
  EXPECT_NEAR(phi_alpha_z(AlphaZ(0.5, 0.5), a, b), dw * dw, 1e-10 * (1 + dw * dw));
}

TEST(Phi, NonnegativeUnitarilyInvariantAcrossRegions) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const double z = rng.uniform(0.25, 0.95);
    const AlphaZ p(rng.uniform(std::min(0.05, z), z), z);
    const int dim = rng.uniform_int(2, 4);
    const PDMatrix a = random_pd(rng, dim, 1e3);
    const PDMatrix b = random_pd(rng, dim, 1e3);
    const double phi = phi_alpha_z(p, a, b);
    EXPECT_GE(phi, -1e-10);
    const Matrix u = random_unitary(rng, dim);
    EXPECT_NEAR(phi_alpha_z(p, congruence(u, a), congruence(u, b)), phi, 1e-9 * (1 + phi));
  }
}

TEST(BuresWasserstein, Examples) {
  const PDMatrix a = random_pd(7, 3, 100.0);
  EXPECT_NEAR(bures_wasserstein_distance(a, a), 0.0, 1e-6);
  EXPECT_NEAR(bures_wasserstein_distance(scalar(1.0), scalar(4.0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(bures_wasserstein_distance(PDMatrix::identity(2), scale(PDMatrix::identity(2), 4.0)),
              1.0, 1e-15);
  const PDMatrix b = random_pd(8, 3, 100.0);
  EXPECT_NEAR(bures_wasserstein_distance(a, b), bures_wasserstein_distance(b, a), 1e-9);
  EXPECT_GT(bures_wasserstein_distance(a, b), 0.0);
}

TEST(LogDet, Examples) {
  const PDMatrix a = random_pd(9, 3, 100.0);
  EXPECT_NEAR(log_det_alpha_divergence(0.0, a, a), 0.0, 1e-13);
  EXPECT_NEAR(log_det_alpha_divergence(0.0, scalar(1.0), scalar(4.0)),
              4.0 * (std::log(2.5) - std::log(2.0)), 1e-14);
  EXPECT_NEAR(log_det_alpha_divergence(0.5, PDMatrix::identity(2), PDMatrix::identity(2)), 0.0, 1e-15);
  const PDMatrix b = random_pd(10, 3, 100.0);
  EXPECT_GT(log_det_alpha_divergence(-0.4, a, b), 0.0);
  EXPECT_THROW(log_det_alpha_divergence(1.0, a, b), DomainError);
}

}  // namespace
}  // namespace pdmeans
