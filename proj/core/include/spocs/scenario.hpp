#pragma once

#include <cstdint>
#include <vector>

#include "spocs/problem.hpp"
#include "spocs/solver.hpp"

namespace spocs {

/// Inputs of the Rayleigh-fading instance generator.
struct ScenarioSpec {
  Index antennas = 0;          // N
  std::size_t users = 0;       // K
  std::size_t groups = 0;      // M
  double gamma = 1.0;          // linear SINR target shared by all users
  double sigma2 = 1.0;         // noise power, also the per-entry channel variance
  PowerCap cap = PowerCap::unbounded();  // same cap on every antenna
  std::uint64_t seed = 0;
};

/// Users are split into contiguous groups; when M does not divide K the first
/// K mod M groups get one extra user. Channels are i.i.d. CN(0, sigma2 I_N),
/// drawn user by user, antenna by antenna, real part before imaginary part.
/// Throws std::invalid_argument on empty dimensions, M > K, or bad gamma/sigma2.
ProblemInstance generate_instance(const ScenarioSpec& spec);

/// Seed of trial t in a batch started from `base`.
inline std::uint64_t derived_seed(std::uint64_t base, std::uint64_t trial) {
  return base ^ trial;
}

/// Largest rho such that sqrt(rho) w has total power <= p_sdr and meets every
/// finite per-antenna cap. Throws std::invalid_argument for w = 0 or p_sdr <= 0.
double scale_factor(const Beamformer& w, const ProblemInstance& instance, double p_sdr);

/// Unscaled SINR of every user.
std::vector<double> per_user_sinr(const Beamformer& w, const ProblemInstance& instance);

/// min_k |w_gk^H h_k|^2 / (sum_{l != gk} |w_l^H h_k|^2 + sigma_k^2 / rho), linear.
double min_scaled_sinr(const Beamformer& w, const ProblemInstance& instance, double p_sdr);

/// 10 log10(x); -inf for x = 0.
double to_db(double linear);
double from_db(double db);

}  // namespace spocs
