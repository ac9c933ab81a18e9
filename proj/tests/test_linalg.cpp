#include <cmath>

#include "support.hpp"

namespace pdmeans {
namespace {

using testing::MatrixNear;
using testing::pd;
using testing::real_matrix;

Matrix unitary_defect(const Matrix& u) {
  return u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
}

TEST(Eigh, IdentityHasUnitEigenvaluesAndUnitaryVectors) {
  const EigenDecomposition e = eigh(HermitianMatrix::identity(3));
  EXPECT_NEAR((e.values - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  EXPECT_LE(testing::max_abs(unitary_defect(e.vectors)), 1e-10);
  EXPECT_TRUE(MatrixNear(e.reconstruct(), Matrix::Identity(3, 3), 1e-10));
}

TEST(Eigh, DiagonalValuesDescendingWithPermutationVectors) {
  const EigenDecomposition e = eigh(HermitianMatrix::diagonal({4.0, 1.0}));
  EXPECT_NEAR(e.values(0), 4.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(1, 1)), 1.0, 1e-14);
}

TEST(Eigh, TwoByTwoCharacteristicPolynomial) {
  // (2 - l)^2 - 1 = 0  =>  l = 3, 1
  const EigenDecomposition e = eigh(HermitianMatrix(real_matrix({{2, 1}, {1, 2}})));
  EXPECT_NEAR(e.values(0), 3.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(Eigh, ReconstructionAtHighConditionNumbers) {
  Rng rng(11);
  for (int dim : {2, 4, 8, 16}) {
    for (double cond : {1.0, 1e4, 1e8}) {
      const PDMatrix a = random_pd(rng, dim, cond);
      const EigenDecomposition e = eigh(a.hermitian());
      EXPECT_LE(testing::rel_max_diff(e.reconstruct(), a.matrix()), 1e-10) << dim << " " << cond;
      EXPECT_LE(testing::max_abs(unitary_defect(e.vectors)), 1e-10);
    }
  }
}

TEST(HermitianMatrix, RejectsNonHermitianAndNonSquare) {
  EXPECT_THROW(HermitianMatrix(real_matrix({{1, 2}, {0, 1}})), DomainError);
  EXPECT_THROW(HermitianMatrix(Matrix::Zero(2, 3)), DimensionError);
  Matrix m(1, 1);
  m(0, 0) = Complex(1.0, 0.5);
  EXPECT_THROW(HermitianMatrix{m}, DomainError);
}

TEST(HermitianMatrix, SymmetrizesWithinTolerance) {
  Matrix m = real_matrix({{1, 2}, {2, 1}});
  m(0, 1) += 1e-14;
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), h(1, 0));
}

TEST(PDMatrix, RejectsIndefiniteAndSingular) {
  EXPECT_THROW(pd({{1, 2}, {2, 1}}), DomainError);
  EXPECT_THROW(pd({{1, 1}, {1, 1}}), DomainError);
  EXPECT_NO_THROW(pd({{2, 1}, {1, 2}}));
}

TEST(Mpow, DiagonalSquareRoot) {
  EXPECT_TRUE(MatrixNear(mpow(PDMatrix::diagonal({4.0, 9.0}), 0.5).matrix(),
                         HermitianMatrix::diagonal({2.0, 3.0}).matrix(), 1e-14));
}

TEST(Mpow, ZeroAndUnitPowers) {
  const PDMatrix a = random_pd(5, 3, 100.0);
  EXPECT_TRUE(MatrixNear(mpow(a, 0.0).matrix(), Matrix::Identity(3, 3), 1e-14));
  EXPECT_TRUE(MatrixNear(mpow(a, 1.0).matrix(), a.matrix(), 1e-13));
}

TEST(Mpow, SquareMatchesMultiplication) {
  const PDMatrix a = pd({{2, 1}, {1, 2}});
  EXPECT_TRUE(MatrixNear(mpow(a, 2.0).matrix(), real_matrix({{5, 4}, {4, 5}}), 1e-13));
  EXPECT_TRUE(MatrixNear(mpow(a, 2.0).matrix(), a.matrix() * a.matrix(), 1e-13));
}

TEST(Mpow, SemigroupProperties) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const PDMatrix a = random_pd(rng, rng.uniform_int(2, 5), 1e3);
    const double s = rng.uniform(-2.0, 2.0);
    const double t = rng.uniform(-2.0, 2.0);
    const Matrix product = mpow(a, s).matrix() * mpow(a, t).matrix();
    EXPECT_LE(relative_difference(product, mpow(a, s + t).matrix()), 1e-9);
    EXPECT_LE(relative_difference(mpow(mpow(a, s), t).matrix(), mpow(a, s * t).matrix()), 1e-10);
  }
}

TEST(Mpow, InverseLogExp) {
  const PDMatrix a = random_pd(8, 4, 1e3);
  EXPECT_TRUE(MatrixNear(inverse(a).matrix() * a.matrix(), Matrix::Identity(4, 4), 1e-10));
  EXPECT_LE(relative_difference(mexp(mlog(a)).matrix(), a.matrix()), 1e-12);
}

TEST(GramPower, AgreesWithDirectPower) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = rng.uniform_int(2, 4);
    // Moderate conditioning: the direct route squares the condition number.
    const PDMatrix a = random_pd(rng, dim, 30.0);
    const PDMatrix b = random_pd(rng, dim, 30.0);
    const Matrix m = a.matrix() * b.matrix();
    const PDMatrix gram(hermitian_part(m * m.adjoint()));
    const double t = rng.uniform(-1.5, 1.5);
    EXPECT_LE(relative_difference(gram_power(m, t).matrix(), mpow(gram, t).matrix()), 1e-8);
    EXPECT_LE(relative_difference(gram_log(m).matrix(), mlog(gram).matrix()), 1e-8);
  }
}

TEST(Congruence, Examples) {
  const PDMatrix a = random_pd(9, 3, 50.0);
  EXPECT_TRUE(MatrixNear(congruence(Matrix::Identity(3, 3), a).matrix(), a.matrix(), 1e-15));
  EXPECT_TRUE(MatrixNear(
      congruence(HermitianMatrix::diagonal({2.0, 1.0}).matrix(), PDMatrix::identity(2)).matrix(),
      HermitianMatrix::diagonal({4.0, 1.0}).matrix(), 1e-15));
  Rng rng(4);
  const Matrix u = random_unitary(rng, 3);
  const PDMatrix c = congruence(u, a);
  EXPECT_LE((c.eigen().values - a.eigen().values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Congruence, PreservesPositivityAndChecksDims) {
  Rng rng(5);
  const PDMatrix a = random_pd(rng, 3, 1e3);
  Matrix m = Matrix::Random(3, 3);
  m += 3.0 * Matrix::Identity(3, 3);
  EXPECT_NO_THROW(congruence(m, a));
  EXPECT_THROW(congruence(Matrix::Identity(2, 2), a), DimensionError);
}

TEST(Loewner, Examples) {
  const HermitianMatrix i2 = HermitianMatrix::identity(2);
  EXPECT_TRUE(loewner_leq(i2, 2.0 * i2, 0.0));
  EXPECT_FALSE(loewner_leq(2.0 * i2, i2, 0.0));
  EXPECT_FALSE(loewner_leq(HermitianMatrix::diagonal({1.0, 3.0}),
                           HermitianMatrix::diagonal({2.0, 2.0}), 0.0));
  EXPECT_FALSE(loewner_leq(HermitianMatrix::diagonal({2.0, 2.0}),
                           HermitianMatrix::diagonal({1.0, 3.0}), 0.0));
  EXPECT_THROW(loewner_leq(i2, HermitianMatrix::identity(3), 0.0), DimensionError);
}

TEST(Loewner, ReflexiveAndAntisymmetricOnRandomPairs) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = rng.uniform_int(2, 4);
    const PDMatrix a = random_pd(rng, dim, 100.0);
    const PDMatrix b = random_pd(rng, dim, 100.0);
    EXPECT_TRUE(loewner_leq(a.hermitian(), a.hermitian(), 1e-12));
    if (loewner_leq(a.hermitian(), b.hermitian(), 1e-12) &&
        loewner_leq(b.hermitian(), a.hermitian(), 1e-12)) {
      EXPECT_LE(relative_difference(a.matrix(), b.matrix()), 1e-10);
    }
  }
}

TEST(RandomPd, UnitConditionGivesIdentity) {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    EXPECT_TRUE(MatrixNear(random_pd(seed, 3, 1.0).matrix(), Matrix::Identity(3, 3), 1e-12));
  }
}

TEST(RandomPd, DeterministicGivenSeed) {
  const Matrix a = random_pd(42, 4, 1e3).matrix();
  const Matrix b = random_pd(42, 4, 1e3).matrix();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_pd(43, 4, 1e3).matrix());
}

TEST(RandomPd, ConditionNumberBound) {
  const PDMatrix a = random_pd(1, 4, 100.0);
  const RealVector l = eigenvalues(a.hermitian());
  EXPECT_LE(l(0) / l(3), 100.0 * (1 + 1e-8));
  EXPECT_GT(l(3), 0.0);
  EXPECT_THROW(random_pd(1, 2, 0.5), DomainError);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(7);
  for (int dim : {1, 2, 5}) {
    EXPECT_LE(testing::max_abs(unitary_defect(random_unitary(rng, dim))), 1e-12);
  }
}

TEST(TraceDet, Examples) {
  EXPECT_DOUBLE_EQ(trace(HermitianMatrix::identity(3)), 3.0);
  EXPECT_NEAR(det_via_eigs(PDMatrix::diagonal({2.0, 3.0})), 6.0, 1e-14);
  EXPECT_NEAR(det_via_eigs(pd({{2, 1}, {1, 2}})), 3.0, 1e-13);
  EXPECT_NEAR(log_det(pd({{2, 1}, {1, 2}})), std::log(3.0), 1e-14);
}

}  // namespace
}  // namespace pdmeans
