#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "spocs/errors.hpp"
#include "spocs/hilbert.hpp"

namespace spocs {
namespace {

using testing::Rand;

double rel_residual(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(1.0, a.norm());
  return (a - b).norm() / scale;
}

TEST(Inner, IdentityPairIsTraceOfIdentity) {
  const auto i2 = MatrixTuple::identity(1, 2);
  EXPECT_DOUBLE_EQ(inner(i2, i2), 2.0);
}

TEST(Inner, AgainstJIsTotalTrace) {
  Rand rng(1);
  const MatrixTuple y = testing::random_psd_tuple(rng, 3, 4);
  double traces = 0.0;
  for (const auto& c : y) traces += c.matrix().trace().real();
  EXPECT_NEAR(inner(MatrixTuple::identity(3, 4), y), traces, 1e-12 * std::abs(traces));
}

TEST(Inner, MatchesEntrywiseSum) {
  Rand rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto x = testing::random_tuple(rng, 1, 3);
    const auto y = testing::random_tuple(rng, 1, 3);
    EXPECT_NEAR(inner(x, y), testing::entrywise_inner(x, y), 1e-12);
  }
}

TEST(Inner, RejectsShapeMismatch) {
  EXPECT_THROW(inner(MatrixTuple::zero(2, 3), MatrixTuple::zero(2, 4)), DimensionMismatch);
  EXPECT_THROW(inner(MatrixTuple::zero(2, 3), MatrixTuple::zero(3, 3)), DimensionMismatch);
  EXPECT_THROW(axpy(1.0, MatrixTuple::zero(1, 2), MatrixTuple::zero(1, 3)), DimensionMismatch);
}

// Real inner product axioms on random tuples.
TEST(Inner, IsARealInnerProduct) {
  Rand rng(3);
  for (int t = 0; t < 120; ++t) {
    const auto x = testing::random_tuple(rng, 3, 4);
    const auto y = testing::random_tuple(rng, 3, 4);
    const auto z = testing::random_tuple(rng, 3, 4);
    const double a = testing::uniform(rng, -3.0, 3.0);
    const double scale = norm(x) * norm(y) + norm(z) * norm(y) + 1.0;

    EXPECT_GT(inner(x, x), 0.0);
    EXPECT_NEAR(inner(x, y), inner(y, x), 1e-12 * scale);
    EXPECT_NEAR(inner(a * x, y), a * inner(x, y), 1e-12 * std::abs(a) * scale);
    EXPECT_NEAR(inner(x + z, y), inner(x, y) + inner(z, y), 1e-12 * scale);
  }
  EXPECT_EQ(inner(MatrixTuple::zero(3, 4), MatrixTuple::zero(3, 4)), 0.0);
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(MatrixTuple::zero(2, 3)), 0.0);
  const std::vector<double> d{3.0, 4.0};
  const MatrixTuple x({HermitianMatrix::diagonal(d)});
  EXPECT_DOUBLE_EQ(norm(x), 5.0);
}

TEST(Norm, MatchesEntrywiseAndSatisfiesTriangleInequality) {
  Rand rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto x = testing::random_tuple(rng, 2, 5);
    const auto y = testing::random_tuple(rng, 2, 5);
    EXPECT_NEAR(norm(x), testing::entrywise_norm(x), 1e-12 * norm(x));
    EXPECT_LE(norm(axpy(1.0, x, y)), norm(x) + norm(y) + 1e-12);
    EXPECT_NEAR(distance(x, y), norm(x - y), 1e-12 * norm(x - y));
  }
}

TEST(Axpy, TrivialCases) {
  Rand rng(5);
  const auto x = testing::random_tuple(rng, 2, 3);
  const auto y = testing::random_tuple(rng, 2, 3);
  EXPECT_EQ(norm(axpy(0.0, x, y) - y), 0.0);
  EXPECT_EQ(norm(axpy(1.0, x, MatrixTuple::zero(2, 3)) - x), 0.0);
  EXPECT_EQ(norm(axpy(-1.0, x, x)), 0.0);
}

TEST(HermitianMatrix, ConstructionIsExactlyHermitian) {
  Rand rng(6);
  CMatrix a = testing::random_complex(rng, 4, 4);
  a = (a + a.adjoint()).eval();
  a(1, 2) += Complex(1e-14, -1e-14);  // drift within tolerance
  const HermitianMatrix h = HermitianMatrix::from(a);
  for (Index i = 0; i < 4; ++i) {
    EXPECT_EQ(h(i, i).imag(), 0.0);
    for (Index j = 0; j < 4; ++j) EXPECT_EQ(h(i, j), std::conj(h(j, i)));
  }
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(HermitianMatrix::from(a), std::invalid_argument);
  EXPECT_THROW(HermitianMatrix::from(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(MatrixTuple, RejectsMixedDimensions) {
  std::vector<HermitianMatrix> c{HermitianMatrix::zero(2), HermitianMatrix::zero(3)};
  EXPECT_THROW(MatrixTuple{c}, DimensionMismatch);
}

TEST(EigHermitian, DiagonalExample) {
  const std::vector<double> d{1.0, -2.0};
  const auto e = eig_hermitian(HermitianMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(e.values(0), 1.0);
  EXPECT_DOUBLE_EQ(e.values(1), -2.0);
  // columns are identity columns up to order (phase normalization makes them exact)
  EXPECT_NEAR(std::abs(e.left(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.left(1, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.left(0, 1)), 0.0, 1e-15);
  EXPECT_EQ(e.kind, SpectrumKind::eigen);
}

TEST(EigHermitian, RankOne) {
  CVector w(3);
  w << Complex(1, 1), Complex(0, 1), Complex(1, 0);  // |w|^2 = 4
  const auto e = eig_hermitian(HermitianMatrix::outer(w));
  EXPECT_NEAR(e.values(0), 4.0, 1e-14);
  EXPECT_NEAR(e.values(1), 0.0, 1e-14);
  EXPECT_NEAR(e.values(2), 0.0, 1e-14);
}

TEST(EigHermitian, EigenpairResiduals) {
  Rand rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::random_hermitian(rng, 4);
    const auto e = eig_hermitian(a);
    for (Index i = 0; i < 4; ++i) {
      const CVector v = e.left.col(i);
      EXPECT_LE((a.matrix() * v - e.values(i) * v).norm(), 1e-12 * a.frobenius_norm());
      if (i > 0) {
        EXPECT_GE(e.values(i - 1), e.values(i));
      }
    }
    EXPECT_LE(rel_residual(e.left.adjoint() * e.left, CMatrix::Identity(4, 4)), 1e-12);
  }
}

TEST(SvdHermitian, DiagonalExample) {
  const std::vector<double> d{1.0, -2.0};
  const auto s = svd_hermitian(HermitianMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(s.values(0), 2.0);
  EXPECT_DOUBLE_EQ(s.values(1), 1.0);
  EXPECT_EQ(s.kind, SpectrumKind::singular);
  // right column = sign(lambda) * left column
  EXPECT_NEAR((s.right.col(0) + s.left.col(0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((s.right.col(1) - s.left.col(1)).norm(), 0.0, 1e-15);
}

TEST(SvdHermitian, PsdInputHasSingularEqualToEigenvalues) {
  Rand rng(8);
  const auto a = testing::random_psd(rng, 5, 3);
  const auto e = eig_hermitian(a);
  const auto s = svd_hermitian(a);
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(s.values(i), std::max(0.0, e.values(i)), 1e-12);
}

TEST(SvdHermitian, MatchesGeneralSvd) {
  Rand rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::random_hermitian(rng, 6);
    const auto s = svd_hermitian(a);
    const auto ref = testing::general_singular_values(a.matrix());
    EXPECT_LE((s.values - ref).norm(), 1e-12 * ref(0));
  }
}

TEST(SpectralDecomposition, ReconstructionUpTo64) {
  Rand rng(10);
  for (Index n : {1, 2, 3, 8, 17, 32, 64}) {
    const auto a = testing::random_hermitian(rng, n);
    const double tol = kSpectralTol * a.frobenius_norm();
    const auto e = eig_hermitian(a);
    const auto s = svd_hermitian(a);
    EXPECT_LE((e.reconstruct() - a.matrix()).norm(), tol) << "n=" << n;
    EXPECT_LE((s.reconstruct() - a.matrix()).norm(), tol) << "n=" << n;
    for (Index i = 0; i < n; ++i) EXPECT_GE(s.values(i), 0.0);
  }
}

}  // namespace
}  // namespace spocs
