#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "properties.hpp"
#include "spocs/perturbations.hpp"

namespace spocs {
namespace {

using testing::Rand;

MatrixTuple diag_tuple(std::initializer_list<std::vector<double>> comps) {
  std::vector<HermitianMatrix> c;
  for (const auto& d : comps) c.push_back(HermitianMatrix::diagonal(d));
  return MatrixTuple(std::move(c));
}

void expect_tuple_near(const MatrixTuple& a, const MatrixTuple& b, double tol) {
  ASSERT_TRUE(a.same_shape(b));
  EXPECT_LE(distance(a, b), tol);
}

TEST(SigmaMax, Examples) {
  EXPECT_EQ(sigma_max(MatrixTuple::zero(2, 3)), 0.0);
  EXPECT_DOUBLE_EQ(sigma_max(diag_tuple({{3.0, 1.0}, {5.0, 0.0}})), 5.0);
  EXPECT_DOUBLE_EQ(sigma_max(diag_tuple({{3.0, -7.0}})), 7.0);
}

TEST(SigmaMax, EqualsLargestSingularValueOverAllComponents) {
  Rand rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto x = testing::random_tuple(rng, 3, 4);
    double ref = 0.0;
    for (const auto& c : x) ref = std::max(ref, testing::general_singular_values(c.matrix())(0));
    EXPECT_NEAR(sigma_max(x), ref, 1e-12 * ref);
  }
}

TEST(NuclearNormAndRankDistance, MatchGeneralSvd) {
  Rand rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto x = testing::random_tuple(rng, 2, 5);
    double nuc = 0.0;
    double tail = 0.0;
    for (const auto& c : x) {
      const auto s = testing::general_singular_values(c.matrix());
      nuc += s.sum();
      tail += s.tail(4).squaredNorm();
    }
    EXPECT_NEAR(nuclear_norm_sum(x), nuc, 1e-12 * nuc);
    EXPECT_NEAR(rank_distance(x), std::sqrt(tail), 1e-12 * nuc);
    // closed form agrees with the realized projection distance
    EXPECT_NEAR(rank_distance(x), distance(x, project_rank_one(x)), 1e-10 * nuc);
  }
}

TEST(Shrink, Examples) {
  const std::vector<double> d{3.0, 1.0};
  const auto a = HermitianMatrix::diagonal(d);
  const auto s = shrink(a, 2.0);
  EXPECT_NEAR(s(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s(1, 1)), 0.0, 1e-15);
  Rand rng(3);
  const auto b = testing::random_hermitian(rng, 4);
  EXPECT_LE((shrink(b, 0.0).matrix() - b.matrix()).norm(), 1e-12 * b.frobenius_norm());
  EXPECT_THROW(shrink(b, -0.1), std::invalid_argument);
}

TEST(Shrink, PsdStaysPsd) {
  Rand rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto a = testing::random_psd(rng, 4, 3);
    const auto s = shrink(a, 0.5);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * a.frobenius_norm());
  }
}

TEST(Shrink, MatchesEllipsoidMinimizer) {
  const auto rep = testing::check_shrink_against_minimizer(5, 8, {0.1, 0.7, 2.0}, 1e-5);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_LT(rep.worst, 1e-6);
}

TEST(TPower, Examples) {
  Rand rng(6);
  const auto x = testing::random_tuple(rng, 2, 3);
  expect_tuple_near(t_power(x, 0.0), x, 1e-12 * norm(x));
  EXPECT_LE(norm(t_power(x, 1.0)), 1e-12 * norm(x));
  EXPECT_LE(norm(t_power(x, 1.7)), 1e-12 * norm(x));
  expect_tuple_near(t_power(diag_tuple({{2.0, 1.0}}), 0.5), diag_tuple({{1.0, 0.0}}), 1e-15);
  EXPECT_THROW(t_power(x, -1.0), std::invalid_argument);
}

TEST(TPower, UsesOneGlobalThreshold) {
  // tau = 0.5 * 4 = 2 for both components.
  const auto y = t_power(diag_tuple({{4.0, 1.0}, {3.0, -2.5}}), 0.5);
  expect_tuple_near(y, diag_tuple({{2.0, 0.0}, {1.0, -0.5}}), 1e-14);
}

TEST(ProjectRankOne, Examples) {
  Rand rng(7);
  const CVector w = testing::random_vector(rng, 3);
  const MatrixTuple x({HermitianMatrix::outer(w)});
  expect_tuple_near(project_rank_one(x), x, 1e-12 * norm(x));
  expect_tuple_near(project_rank_one(diag_tuple({{3.0, 1.0}})), diag_tuple({{3.0, 0.0}}), 1e-15);
  expect_tuple_near(project_rank_one(diag_tuple({{1.0, -3.0}})), diag_tuple({{0.0, -3.0}}), 1e-15);
}

// No rank-one Hermitian matrix of matching norm is closer than the projection.
TEST(ProjectRankOne, RandomSearchProbe) {
  Rand rng(8);
  for (int t = 0; t < 5; ++t) {
    const auto x = testing::random_tuple(rng, 1, 3);
    const auto p = project_rank_one(x);
    const double best = distance(x, p);
    EXPECT_NEAR(best, rank_distance(x), 1e-12 * norm(x));
    EXPECT_EQ(testing::numerical_rank(p[0].matrix(), 1e-12), 1);
    const double s = norm(p);
    for (int c = 0; c < 20000; ++c) {
      CVector u = testing::random_vector(rng, 3);
      u.normalize();
      const double sign = c % 2 == 0 ? 1.0 : -1.0;
      const MatrixTuple cand({sign * s * HermitianMatrix::outer(u)});
      ASSERT_GE(distance(x, cand), best - 1e-12);
    }
  }
}

TEST(ProjectRankOne, TieBreakIsDeterministic) {
  const auto x = MatrixTuple::identity(1, 3);
  const auto a = project_rank_one(x);
  const auto b = project_rank_one(x);
  EXPECT_EQ(distance(a, b), 0.0);
  EXPECT_NEAR(distance(x, a), std::sqrt(2.0), 1e-14);
}

TEST(Perturbation, Examples) {
  Rand rng(9);
  const MatrixTuple r1({HermitianMatrix::outer(testing::random_vector(rng, 4)),
                        HermitianMatrix::outer(testing::random_vector(rng, 4))});
  EXPECT_LE(norm(perturbation(r1, 0.0)), 1e-12 * norm(r1));
  expect_tuple_near(perturbation(diag_tuple({{2.0, 1.0}}), 0.5), diag_tuple({{-1.0, -1.0}}),
                    1e-15);
  EXPECT_THROW(perturbation(r1, -0.1), std::invalid_argument);
}

TEST(Perturbation, EqualsRankOneOfPowerReductionMinusX) {
  Rand rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto x = testing::random_tuple(rng, 3, 4);
    for (double a : {0.0, 0.3, 0.8}) {
      const auto ref = project_rank_one(t_power(x, a)) - x;
      expect_tuple_near(perturbation(x, a), ref, 1e-12 * norm(x));
      // precomputed-spectra overload
      expect_tuple_near(perturbation(x, a, svd_components(x)), ref, 1e-12 * norm(x));
    }
  }
}

TEST(Perturbation, PowerReductionCommutesWithRankOneProjection) {
  Rand rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto x = testing::random_tuple(rng, 2, 4);
    for (double a : {0.1, 0.5, 0.9}) {
      expect_tuple_near(project_rank_one(t_power(x, a)), t_power(project_rank_one(x), a),
                        1e-10 * (1.0 + norm(x)));
    }
  }
}

TEST(Perturbation, PowerReductionCannotIncreaseRank) {
  Rand rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto x = testing::random_psd_tuple(rng, 3, 5);
    for (double a : {0.0, 0.1, 0.4, 0.9, 1.0}) {
      const auto y = t_power(x, a);
      for (std::size_t m = 0; m < 3; ++m) {
        EXPECT_LE(testing::numerical_rank(y[m].matrix(), 1e-9),
                  testing::numerical_rank(x[m].matrix(), 1e-9));
      }
    }
  }
}

TEST(Perturbation, NormBoundOnPsdInput) {
  Rand rng(13);
  const auto x = testing::random_psd_tuple(rng, 2, 4);
  EXPECT_LE(norm(perturbation(x, 0.3)), norm(x));
}

TEST(Perturbation, NormBoundProperty) {
  std::vector<double> alphas;
  for (int i = 0; i <= 20; ++i) alphas.push_back(0.1 * i);
  const auto rep = testing::check_perturbation_bound(14, 150, alphas);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

TEST(Perturbation, DescentProperties) {
  const auto rep = testing::check_descent_properties(15, 60, 60, {0.1, 0.5, 1.0}, {0.1, 0.5, 0.9});
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_GT(rep.checked, 1000u);
}

}  // namespace
}  // namespace spocs
