#pragma once

// Superiorization perturbations on H^M.
//
//   T_P^alpha(X)_m = D_tau(X_m),  tau = alpha * sigma_max(X)     power reduction
//   P_R(X)_m       = sigma_1 u_1 v_1^H                          rank-one projection
//   Y_alpha(X)     = P_R T_P^alpha (X) - X                       combined perturbation
//
// D_tau is singular value shrinkage, the proximal map of tau * ||.||_*.

#include <span>
#include <vector>

#include "spocs/hilbert.hpp"

namespace spocs {

/// Singular decompositions of every component, computed via eig_hermitian.
std::vector<SpectralDecomposition> svd_components(const MatrixTuple& x);

/// Index of the leading singular triple. When sigma_1 is repeated (relative
/// gap below 1e-12) the tied triple whose left vector has the lexicographically
/// largest real part is selected.
Index leading_triple(const SpectralDecomposition& svd);

/// max over m, i of sigma_i(X_m)
double sigma_max(const MatrixTuple& x);
double sigma_max(std::span<const SpectralDecomposition> svds);

/// f(X) = sum_m ||X_m||_* (nuclear norms).
double nuclear_norm_sum(const MatrixTuple& x);

/// g(X) = d(X, R) = sqrt(sum_m sum_{i >= 2} sigma_i(X_m)^2).
double rank_distance(const MatrixTuple& x);
double rank_distance(std::span<const SpectralDecomposition> svds);

/// Singular value shrinkage U diag([sigma_i - tau]_+) V^H. Throws
/// std::invalid_argument for tau < 0.
HermitianMatrix shrink(const HermitianMatrix& a, double tau);

/// T_P^alpha: componentwise shrinkage with the shared threshold
/// tau = alpha * sigma_max(X). Throws for alpha < 0.
MatrixTuple t_power(const MatrixTuple& x, double alpha);

/// A nearest point of the rank constraint set R (see leading_triple for ties).
MatrixTuple project_rank_one(const MatrixTuple& x);

/// Y_alpha(X)_m = [sigma_1(X_m) - alpha sigma_max(X)]_+ u_m1 v_m1^H - X_m.
/// Throws for alpha < 0.
MatrixTuple perturbation(const MatrixTuple& x, double alpha);
/// Same, reusing precomputed singular decompositions of the components of x.
MatrixTuple perturbation(const MatrixTuple& x, double alpha,
                         std::span<const SpectralDecomposition> svds);

}  // namespace spocs
