#pragma once

// Lagrangian lower bounds for the relaxed problem
//   min <<J, X>>  s.t.  <<X, Z^k>> >= sigma_k^2,  <<X, D^i>> <= p_i,  X >= 0.
// Its dual is
//   max sum_k y_k sigma_k^2 - sum_i z_i p_i
//   s.t. I + diag(z) - sum_k y_k c_km Q_k >= 0 for every group m,  y, z >= 0,
// where c_km = 1/gamma_k for m = g_k and -1 otherwise. The constraint is
// invariant under scaling (y, z) -> t (y, z) except for the identity, so any
// nonnegative (y, z) is made feasible by t = 1 / max_m lambda_max(B_m) with
// B_m = sum_k y_k c_km Q_k - diag(z).

#include <vector>

#include "spocs/constraints.hpp"

namespace spocs {

struct DualPoint {
  std::vector<double> sinr;   // y_k >= 0
  std::vector<double> power;  // z_i >= 0; zero for unbounded caps
};

/// Dual objective of the feasible rescaling of `dual`, a lower bound on the
/// relaxed optimum. Returns -infinity when no positive rescaling exists.
double dual_lower_bound(const ConstraintSet& cs, const DualPoint& dual);

/// Multipliers fitted to complementary slackness S_m X_m = 0 at a near-optimal
/// PSD point, clipped to the nonnegative orthant. Only power constraints within
/// `active_tol` (relative) of their cap are given a multiplier.
DualPoint fit_multipliers(const ConstraintSet& cs, const MatrixTuple& x, double active_tol = 1e-2);

}  // namespace spocs
