#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <stdexcept>

#include "spocs/duality.hpp"
#include "spocs/perturbations.hpp"
#include "spocs/solver.hpp"

namespace spocs {

namespace {

constexpr std::size_t kPolishCheckEvery = 10;

// Largest SINR or power violation. Points leaving T pass through the PSD
// projection last, so their cone residual is zero up to rounding.
double halfspace_violation(const ConstraintSet& cs, const MatrixTuple& x) {
  double worst = 0.0;
  for (std::size_t k = 0; k < cs.users(); ++k) {
    const auto& q = cs.sinr(k);
    worst = std::max(worst, q.offset - q.evaluate(x));
  }
  if (cs.has_bounded_caps()) {
    const auto& p = cs.power();
    for (Index i = 0; i < cs.antennas(); ++i) {
      const PowerCap& cap = p.caps[static_cast<std::size_t>(i)];
      if (cap.bounded()) worst = std::max(worst, p.evaluate(x, i) - cap.value());
    }
  }
  return worst;
}

double probe_scale(const ConstraintSet& cs, const SdrOracleConfig& config) {
  SolverConfig pc;
  pc.relaxation = config.relaxation;
  pc.eps = 1e-3;
  pc.n_max = config.probe_iters;
  pc.record_trace_every = pc.n_max;
  const double s = sigma_max(pocs_solve(cs, pc, cs.zero_point()).x);
  return s > 0.0 ? s : 1.0;
}

}  // namespace

SdrOracleConfig SdrOracleConfig::standard(std::size_t users) {
  SdrOracleConfig c;
  c.relaxation = Relaxation::standard(users);
  return c;
}

void SdrOracleConfig::validate(std::size_t users) const {
  relaxation.validate(users);
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw std::invalid_argument("sdr oracle: step_scale must be positive");
  }
  if (max_iters == 0) throw std::invalid_argument("sdr oracle: max_iters must be positive");
  if (first_check == 0) throw std::invalid_argument("sdr oracle: first_check must be positive");
  if (probe_iters == 0) throw std::invalid_argument("sdr oracle: probe_iters must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("sdr oracle: tol must be positive");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("sdr oracle: gap_tol must be positive");
}

SdrEstimate estimate_sdr_optimum(const ConstraintSet& cs, const SdrOracleConfig& config) {
  config.validate(cs.users());

  SdrEstimate est;
  est.step_constant = config.step_scale * probe_scale(cs, config);
  est.value = -std::numeric_limits<double>::infinity();

  // Runs POCS from p until the halfspace residuals are within tol; returns the
  // point and the iterations used.
  const auto polish = [&](MatrixTuple p, std::size_t budget) {
    std::size_t used = 0;
    while (halfspace_violation(cs, p) > config.tol && used < budget) {
      for (std::size_t j = 0; j < kPolishCheckEvery && used < budget; ++j, ++used) {
        cs.apply_t_star(p, config.relaxation);
      }
    }
    return std::pair{std::move(p), used};
  };
  const auto within_gap = [&](double upper) {
    return std::isfinite(est.value) && est.value > 0.0 &&
           upper - est.value <= config.gap_tol * upper;
  };

  MatrixTuple x = cs.zero_point();
  MatrixTuple fixed = x;  // T(X^(n))
  std::optional<std::pair<MatrixTuple, std::size_t>> certified;
  std::size_t checkpoint = config.first_check;
  std::size_t n = 0;
  while (n < config.max_iters) {
    fixed = x;
    cs.apply_t_star(fixed, config.relaxation);
    ++n;
    if (n == checkpoint || n == config.max_iters) {
      const DualPoint dual = fit_multipliers(cs, fixed);
      const double bound = dual_lower_bound(cs, dual);
      if (bound > est.value) {
        est.value = bound;
        est.sinr_multipliers = dual.sinr;
        est.power_multipliers = dual.power;
      }
      if (n >= config.min_iters) {
        // Capped at n so a slow polish at most doubles the work so far.
        auto candidate = polish(fixed, std::min(config.polish_iters, n));
        if (halfspace_violation(cs, candidate.first) <= config.tol &&
            within_gap(cs.objective(candidate.first))) {
          certified = std::move(candidate);
          break;
        }
      }
      checkpoint *= 2;
    }
    const double lambda = est.step_constant / static_cast<double>(n);
    x = fixed;
    for (auto& c : x) c.shift(-lambda);
  }
  est.iterations = n;

  auto [point, used] = certified ? std::move(*certified) : polish(std::move(fixed), config.polish_iters);
  est.polish_iterations = used;
  est.residuals = cs.residuals(point);
  est.upper_bound = cs.objective(point);
  est.x = std::move(point);
  est.reliable = est.residuals.max_violation() <= config.tol && within_gap(est.upper_bound);
  return est;
}

}  // namespace spocs
