#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spocs/constraints.hpp"
#include "spocs/hilbert.hpp"

namespace spocs {

/// Parameters of the (superiorized) POCS iteration.
struct SolverConfig {
  Relaxation relaxation;          // mu_1..mu_{K+2}
  double a = 0.95;                // alpha^(n) = a^n
  double b = 0.999;               // beta^(n) = b^n, summable for b < 1
  double eps = 1e-6;              // relative step tolerance
  std::size_t n_max = 100000;
  std::size_t record_trace_every = 10;
  /// Optional override of alpha^(n); any nonnegative sequence is admissible.
  std::function<double(std::size_t)> alpha_sequence;

  /// mu_k = 1.9, mu_{K+1} = mu_{K+2} = 1, a = 0.95, b = 0.999, eps = 1e-6, n_max = 1e5.
  static SolverConfig standard(std::size_t users);

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate(std::size_t users) const;
};

enum class Termination { tolerance, iteration_cap };

const char* to_string(Termination t);

struct TraceRecord {
  std::size_t n = 0;              // iterate index
  double objective = 0.0;
  double rank_distance = 0.0;
  double max_sinr_residual = 0.0;
  double max_power_residual = 0.0;
  double psd_residual = 0.0;
  double rel_step = 0.0;          // ||X^(n) - X^(n-1)|| / ||X^(n)||
  std::int64_t elapsed_ns = 0;
};

struct SolverTrace {
  std::size_t iterations = 0;
  Termination terminated_by = Termination::iteration_cap;
  double final_rel_step = 0.0;
  std::vector<TraceRecord> records;
};

struct SolveResult {
  MatrixTuple x;
  SolverTrace trace;
};

/// State exposed to an observer after each iteration n -> n + 1.
struct IterationView {
  std::size_t n = 0;
  const MatrixTuple& current;        // X^(n)
  const MatrixTuple* perturbation;   // Y^(n); null for the unperturbed iteration
  double alpha = 0.0;
  double beta = 0.0;
  const MatrixTuple& perturbed;      // X^(n) + beta^(n) Y^(n)
  const MatrixTuple& next;           // X^(n+1)
};

using IterationObserver = std::function<void(const IterationView&)>;

/// Basic algorithm X^(n+1) = T(X^(n)).
SolveResult pocs_solve(const ConstraintSet& constraints, const SolverConfig& config,
                       MatrixTuple x0, const IterationObserver& observer = {});

/// Superiorized iteration X^(n+1) = T(X^(n) + b^n Y_{a^n}(X^(n))), stopped when
/// ||X^(n+1) - X^(n)|| < eps ||X^(n+1)|| or after n_max iterations.
SolveResult spocs_solve(const ConstraintSet& constraints, const SolverConfig& config,
                        MatrixTuple x0, const IterationObserver& observer = {});

/// Multicast beamformer: one vector per group.
struct Beamformer {
  std::vector<CVector> vectors;

  std::size_t groups() const { return vectors.size(); }
  Index antennas() const { return vectors.empty() ? 0 : vectors.front().size(); }
  double total_power() const;
  /// sum_m |w_m(i)|^2
  double antenna_power(Index i) const;
  bool all_finite() const;
};

/// w_m = sqrt(sigma_1(X_m)) u_m1
Beamformer extract_beamformer(const MatrixTuple& x);

/// Knobs of the SDR optimum estimator.
struct SdrOracleConfig {
  Relaxation relaxation;            // mu of the inner T operator
  double step_scale = 10.0;         // c = step_scale * sigma_max of the probe point
  std::size_t max_iters = 200000;   // descent iterations
  double tol = 1e-6;                // feasibility tolerance on the returned point
  std::size_t min_iters = 2000;
  std::size_t first_check = 250;    // bounds are taken at first_check * 2^j
  double gap_tol = 1e-2;            // stop (and accept) once (upper_bound - value) / upper_bound is below
  std::size_t probe_iters = 1000;   // POCS iterations fixing the scale
  std::size_t polish_iters = 50000; // POCS iterations restoring feasibility at the end

  static SdrOracleConfig standard(std::size_t users);
  void validate(std::size_t users) const;
};

struct SdrEstimate {
  double value = 0.0;               // certified lower bound on P*_SDR, used as the estimate
  double upper_bound = 0.0;         // objective of the returned feasible point
  bool reliable = false;            // x within tol and relative gap within gap_tol
  std::size_t iterations = 0;       // descent iterations
  std::size_t polish_iterations = 0;
  double step_constant = 0.0;       // c
  ResidualReport residuals;         // at x
  MatrixTuple x;                    // polished point
  std::vector<double> sinr_multipliers;
  std::vector<double> power_multipliers;
};

/// Estimates the optimum of the relaxed SDP, min <<J, X>> over C*, by hybrid
/// steepest descent X^(n+1) = T(X^(n)) - lambda_n J with lambda_n = c / (n + 1).
/// Multipliers fitted at the descent iterates give a dual-feasible point whose
/// objective is a lower bound. At each checkpoint a copy of the iterate is
/// driven back into the feasible set by plain POCS sweeps, giving an upper
/// bound; the run stops once the two are within gap_tol or at max_iters. The
/// best lower bound is returned as value.
SdrEstimate estimate_sdr_optimum(const ConstraintSet& constraints, const SdrOracleConfig& config);

}  // namespace spocs
