#pragma once

// Constraint sets of the relaxed multicast problem in H^M and their projections:
//   Q_k = { X : <<X, Z^k>> >= sigma_k^2 }        SINR halfspaces
//   P   = { X : <<X, D^i>> <= p_i for all i }     per-antenna power
//   C+  = { X : X_m >= 0 for all m }              PSD cone
// and the relaxed POCS operator T = T_C+ T_P T_QK ... T_Q1.

#include <cstddef>
#include <vector>

#include "spocs/hilbert.hpp"
#include "spocs/problem.hpp"

namespace spocs {

/// Relaxation parameters mu_1..mu_{K+2} of the POCS operator: one per SINR
/// halfspace, then the power set, then the PSD cone.
struct Relaxation {
  std::vector<double> mus;

  /// mu_k = sinr for every user, mu_{K+1} = power, mu_{K+2} = psd.
  static Relaxation uniform(std::size_t users, double sinr, double power, double psd);
  /// mu_k = 1.9 for the SINR halfspaces, unrelaxed power and PSD projections.
  static Relaxation standard(std::size_t users) { return uniform(users, 1.9, 1.0, 1.0); }

  std::size_t users() const { return mus.size() < 2 ? 0 : mus.size() - 2; }
  double sinr(std::size_t k) const { return mus[k]; }
  double power() const { return mus[mus.size() - 2]; }
  double psd() const { return mus.back(); }

  /// Throws std::invalid_argument unless there are K + 2 values, each in (0, 2).
  void validate(std::size_t users) const;
};

/// Halfspace Q_k with normal Z^k: component g_k is Q_k / gamma_k, every other
/// component is -Q_k. Stored in factored form (Q_k = h_k h_k^H).
struct SinrHalfspace {
  std::size_t user = 0;
  std::size_t group = 0;
  double gamma = 1.0;
  double offset = 1.0;  // sigma_k^2
  CVector channel;
  double normal_norm_sq = 0.0;  // ||Z^k||^2 = (gamma^-2 + M - 1) ||h_k||^4

  double coefficient(std::size_t m) const { return m == group ? 1.0 / gamma : -1.0; }
  /// <<X, Z^k>>
  double evaluate(const MatrixTuple& x) const;
  bool contains(const MatrixTuple& x) const { return evaluate(x) >= offset; }
  /// Materialized Z^k.
  MatrixTuple normal(std::size_t groups) const;
};

/// The N halfspaces <<X, D^i>> <= p_i with D^i = (e_i e_i^T, ..., e_i e_i^T).
struct PowerHalfspaces {
  std::vector<PowerCap> caps;
  std::size_t groups = 0;

  Index antennas() const { return static_cast<Index>(caps.size()); }
  /// <<X, D^i>> = sum_m Re X_m(i, i)
  double evaluate(const MatrixTuple& x, Index i) const;
  /// ||D^i||^2 = M
  double normal_norm_sq() const { return static_cast<double>(groups); }
  MatrixTuple normal(Index i) const;
};

/// Violation of each constraint at a point.
struct ResidualReport {
  std::vector<double> sinr;   // max(0, sigma_k^2 - <<X, Z^k>>)
  std::vector<double> power;  // max(0, <<X, D^i>> - p_i); 0 for unbounded caps
  double psd = 0.0;           // sum_m sum_i max(0, -lambda_i(X_m))
  double rank_distance = 0.0; // d(X, R)

  double max_sinr() const;
  double max_power() const;
  /// Largest of the SINR, power and PSD violations.
  double max_violation() const;
};

/// X + mu (P(X) - X)
MatrixTuple relax(const MatrixTuple& projected, const MatrixTuple& x, double mu);

/// Componentwise projection onto the PSD cone: negative eigenvalues clamped to zero.
MatrixTuple project_psd(const MatrixTuple& x);
/// sum_m sum_i max(0, -lambda_i(X_m))
double psd_violation(const MatrixTuple& x);

/// The constraint sets of one problem instance. Halfspace normals and their
/// norms are computed once at construction. Immutable after construction.
class ConstraintSet {
 public:
  /// Validates the instance (see ProblemInstance::validate).
  explicit ConstraintSet(ProblemInstance instance);

  const ProblemInstance& instance() const { return instance_; }
  std::size_t users() const { return instance_.users; }
  std::size_t groups() const { return instance_.groups; }
  Index antennas() const { return instance_.antennas; }

  const SinrHalfspace& sinr(std::size_t k) const { return sinr_[k]; }
  const PowerHalfspaces& power() const { return power_; }
  bool has_bounded_caps() const { return has_bounded_caps_; }

  /// Zero tuple with the instance's shape.
  MatrixTuple zero_point() const { return MatrixTuple::zero(groups(), antennas()); }

  /// <<J, X>> = sum_m tr(X_m)
  double objective(const MatrixTuple& x) const;

  MatrixTuple project_sinr(const MatrixTuple& x, std::size_t k) const;
  MatrixTuple project_power(const MatrixTuple& x) const;
  MatrixTuple project_psd(const MatrixTuple& x) const { return spocs::project_psd(x); }

  /// Relaxed POCS sweep: Q_1, ..., Q_K, then P, then C+.
  MatrixTuple t_star(const MatrixTuple& x, const Relaxation& mu) const;

  /// In-place variant of t_star. When `spectra` is non-null and mu_{K+2} == 1,
  /// it receives the singular decomposition of each component of the result
  /// (read off the final PSD projection); otherwise it is cleared.
  void apply_t_star(MatrixTuple& x, const Relaxation& mu,
                    std::vector<SpectralDecomposition>* spectra = nullptr) const;

  // In-place relaxed projections used by apply_t_star.
  void relax_sinr_inplace(MatrixTuple& x, std::size_t k, double mu) const;
  void relax_power_inplace(MatrixTuple& x, double mu) const;

  ResidualReport residuals(const MatrixTuple& x) const;

 private:
  void require_shape(const MatrixTuple& x) const;

  ProblemInstance instance_;
  std::vector<SinrHalfspace> sinr_;
  PowerHalfspaces power_;
  bool has_bounded_caps_ = false;
};

}  // namespace spocs
