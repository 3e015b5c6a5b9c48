#include "spocs/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "spocs/errors.hpp"

namespace spocs {

namespace {

// Eigen-directions of X_m kept in the fit, relative to the largest eigenvalue.
constexpr double kRangeTol = 1e-8;

}  // namespace

double dual_lower_bound(const ConstraintSet& cs, const DualPoint& dual) {
  if (dual.sinr.size() != cs.users() ||
      dual.power.size() != static_cast<std::size_t>(cs.antennas())) {
    throw DimensionMismatch("dual_lower_bound: multiplier vectors have the wrong size");
  }
  double numerator = 0.0;
  for (std::size_t k = 0; k < cs.users(); ++k) {
    numerator += std::max(0.0, dual.sinr[k]) * cs.sinr(k).offset;
  }
  const auto& caps = cs.power().caps;
  std::vector<double> z(static_cast<std::size_t>(cs.antennas()), 0.0);  // holds -z_i
  for (Index i = 0; i < cs.antennas(); ++i) {
    const auto& cap = caps[static_cast<std::size_t>(i)];
    if (!cap.bounded()) continue;
    const auto ui = static_cast<std::size_t>(i);
    z[ui] = -std::max(0.0, dual.power[ui]);
    numerator += z[ui] * cap.value();
  }
  if (!(numerator > 0.0)) return -std::numeric_limits<double>::infinity();

  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < cs.groups(); ++m) {
    HermitianMatrix b = HermitianMatrix::diagonal(z);  // -diag(z)
    for (std::size_t k = 0; k < cs.users(); ++k) {
      const double y = std::max(0.0, dual.sinr[k]);
      if (y > 0.0) b.add_outer(y * cs.sinr(k).coefficient(m), cs.sinr(k).channel);
    }
    top = std::max(top, eig_hermitian(b).values(0));
  }
  if (!(top > 0.0)) return -std::numeric_limits<double>::infinity();
  return numerator / top;
}

DualPoint fit_multipliers(const ConstraintSet& cs, const MatrixTuple& x, double active_tol) {
  const std::size_t K = cs.users();
  const Index N = cs.antennas();
  const auto& caps = cs.power().caps;

  std::vector<Index> active;
  for (Index i = 0; i < N; ++i) {
    const auto& cap = caps[static_cast<std::size_t>(i)];
    if (cap.bounded() && cs.power().evaluate(x, i) >= (1.0 - active_tol) * cap.value()) {
      active.push_back(i);
    }
  }

  // W_m = V_m Lambda_m^{1/2} over the numerical range of X_m. Complementary
  // slackness S_m W_m = 0 reads
  //   sum_k y_k c_km h_k (h_k^H W_m) - sum_i z_i e_i W_m(i, :) = W_m.
  std::vector<CMatrix> factors;
  double top = 0.0;
  std::vector<SpectralDecomposition> eigs;
  for (const auto& c : x) {
    eigs.push_back(eig_hermitian(c));
    if (eigs.back().dim() > 0) top = std::max(top, eigs.back().values(0));
  }
  Index rows = 0;
  for (const auto& e : eigs) {
    Index r = 0;
    while (r < e.dim() && e.values(r) > kRangeTol * top) ++r;
    CMatrix w = e.left.leftCols(r) * e.values.head(r).cwiseSqrt().cast<Complex>().asDiagonal();
    rows += 2 * N * r;
    factors.push_back(std::move(w));
  }

  DualPoint out;
  out.sinr.assign(K, 0.0);
  out.power.assign(static_cast<std::size_t>(N), 0.0);
  if (rows == 0) return out;

  const Index cols = static_cast<Index>(K + active.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs(rows);
  Index row = 0;
  for (std::size_t m = 0; m < factors.size(); ++m) {
    const CMatrix& w = factors[m];
    const Index r = w.cols();
    if (r == 0) continue;
    auto put = [&](Index col, const CMatrix& block) {
      for (Index j = 0; j < r; ++j) {
        for (Index i = 0; i < N; ++i) {
          a(row + 2 * (j * N + i), col) = block(i, j).real();
          a(row + 2 * (j * N + i) + 1, col) = block(i, j).imag();
        }
      }
    };
    for (std::size_t k = 0; k < K; ++k) {
      const auto& q = cs.sinr(k);
      const CMatrix block = q.coefficient(m) * (q.channel * (q.channel.adjoint() * w));
      put(static_cast<Index>(k), block);
    }
    for (std::size_t t = 0; t < active.size(); ++t) {
      CMatrix block = CMatrix::Zero(N, r);
      block.row(active[t]) = -w.row(active[t]);
      put(static_cast<Index>(K + t), block);
    }
    for (Index j = 0; j < r; ++j) {
      for (Index i = 0; i < N; ++i) {
        rhs(row + 2 * (j * N + i)) = w(i, j).real();
        rhs(row + 2 * (j * N + i) + 1) = w(i, j).imag();
      }
    }
    row += 2 * N * r;
  }

  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  for (std::size_t k = 0; k < K; ++k) out.sinr[k] = std::max(0.0, sol(static_cast<Index>(k)));
  for (std::size_t t = 0; t < active.size(); ++t) {
    out.power[static_cast<std::size_t>(active[t])] =
        std::max(0.0, sol(static_cast<Index>(K + t)));
  }
  return out;
}

}  // namespace spocs
