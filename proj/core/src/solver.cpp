#include "spocs/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "spocs/errors.hpp"
#include "spocs/perturbations.hpp"

namespace spocs {

namespace {

using Clock = std::chrono::steady_clock;

TraceRecord make_record(const ConstraintSet& constraints, const MatrixTuple& x, std::size_t n,
                        double rel_step, Clock::time_point start) {
  const ResidualReport r = constraints.residuals(x);
  TraceRecord rec;
  rec.n = n;
  rec.objective = constraints.objective(x);
  rec.rank_distance = r.rank_distance;
  rec.max_sinr_residual = r.max_sinr();
  rec.max_power_residual = r.max_power();
  rec.psd_residual = r.psd;
  rec.rel_step = rel_step;
  rec.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  return rec;
}

// ||X^(n+1) - X^(n)|| < eps ||X^(n+1)||; never satisfied at X^(n+1) = 0.
bool small_step(double step, double next_norm, double eps) {
  return next_norm > 0.0 && step < eps * next_norm;
}

double relative(double step, double next_norm) {
  return next_norm > 0.0 ? step / next_norm : std::numeric_limits<double>::infinity();
}

SolveResult iterate(const ConstraintSet& constraints, const SolverConfig& config, MatrixTuple x,
                    bool perturbed, const IterationObserver& observer) {
  config.validate(constraints.users());
  if (x.size() != constraints.groups() || x.dim() != constraints.antennas()) {
    throw DimensionMismatch("solver: initial point shape does not match instance");
  }
  const auto start = Clock::now();

  SolveResult result;
  SolverTrace& trace = result.trace;
  trace.records.reserve(config.n_max / config.record_trace_every + 2);

  // Singular decompositions of the current iterate. After each T application
  // with an unrelaxed PSD step they are read off the final projection.
  std::vector<SpectralDecomposition> spectra;
  bool spectra_valid = false;

  double alpha = 1.0;  // a^n
  double beta = 1.0;   // b^n
  MatrixTuple next;
  for (std::size_t n = 0; n < config.n_max; ++n) {
    const double alpha_n = config.alpha_sequence ? config.alpha_sequence(n) : alpha;
    std::optional<MatrixTuple> y;
    if (perturbed) {
      if (!spectra_valid) spectra = svd_components(x);
      y = perturbation(x, alpha_n, spectra);
      next = axpy(beta, *y, x);
    } else {
      next = x;
    }
    std::optional<MatrixTuple> perturbed_point;
    if (observer) perturbed_point = next;
    constraints.apply_t_star(next, config.relaxation, perturbed ? &spectra : nullptr);
    spectra_valid = perturbed && !spectra.empty();

    const double step = distance(next, x);
    const double next_norm = norm(next);
    const bool done = small_step(step, next_norm, config.eps);

    if (observer) {
      observer(IterationView{n, x, y ? &*y : nullptr, alpha_n, perturbed ? beta : 0.0,
                             *perturbed_point, next});
    }

    std::swap(x, next);
    trace.iterations = n + 1;
    trace.final_rel_step = relative(step, next_norm);
    if (done || (n + 1) % config.record_trace_every == 0 || n + 1 == config.n_max) {
      trace.records.push_back(make_record(constraints, x, n + 1, trace.final_rel_step, start));
    }
    if (done) {
      trace.terminated_by = Termination::tolerance;
      break;
    }
    alpha *= config.a;
    beta *= config.b;
  }
  result.x = std::move(x);
  return result;
}

}  // namespace

SolverConfig SolverConfig::standard(std::size_t users) {
  SolverConfig c;
  c.relaxation = Relaxation::standard(users);
  return c;
}

void SolverConfig::validate(std::size_t users) const {
  relaxation.validate(users);
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("solver: a must lie in (0, 1)");
  if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("solver: b must lie in (0, 1)");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("solver: eps must be positive");
  if (n_max == 0) throw std::invalid_argument("solver: n_max must be positive");
  if (record_trace_every == 0) {
    throw std::invalid_argument("solver: record_trace_every must be positive");
  }
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::tolerance:
      return "tolerance";
    case Termination::iteration_cap:
      return "iteration-cap";
  }
  return "unknown";
}

SolveResult pocs_solve(const ConstraintSet& constraints, const SolverConfig& config,
                       MatrixTuple x0, const IterationObserver& observer) {
  return iterate(constraints, config, std::move(x0), false, observer);
}

SolveResult spocs_solve(const ConstraintSet& constraints, const SolverConfig& config,
                        MatrixTuple x0, const IterationObserver& observer) {
  return iterate(constraints, config, std::move(x0), true, observer);
}

// --- beamformer -------------------------------------------------------------

double Beamformer::total_power() const {
  double s = 0.0;
  for (const auto& w : vectors) s += w.squaredNorm();
  return s;
}

double Beamformer::antenna_power(Index i) const {
  double s = 0.0;
  for (const auto& w : vectors) s += std::norm(w(i));
  return s;
}

bool Beamformer::all_finite() const {
  for (const auto& w : vectors) {
    if (!w.allFinite()) return false;
  }
  return true;
}

Beamformer extract_beamformer(const MatrixTuple& x) {
  Beamformer bf;
  bf.vectors.reserve(x.size());
  for (const auto& c : x) {
    const auto s = svd_hermitian(c);
    if (s.dim() == 0 || s.values(0) == 0.0) {
      bf.vectors.push_back(CVector::Zero(c.dim()));
      continue;
    }
    const Index i = leading_triple(s);
    bf.vectors.push_back(std::sqrt(s.values(i)) * s.left.col(i));
  }
  return bf;
}

}  // namespace spocs
