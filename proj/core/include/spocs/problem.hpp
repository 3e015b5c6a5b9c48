#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "spocs/hilbert.hpp"

namespace spocs {

/// Per-antenna power cap p_i, which may be unbounded.
class PowerCap {
 public:
  static PowerCap unbounded() { return PowerCap(); }
  /// Throws std::invalid_argument unless value > 0 and finite.
  static PowerCap of(double value);

  bool bounded() const { return bounded_; }
  /// +infinity when unbounded.
  double value() const { return bounded_ ? value_ : std::numeric_limits<double>::infinity(); }

  friend bool operator==(const PowerCap&, const PowerCap&) = default;

 private:
  PowerCap() = default;
  double value_ = 0.0;
  bool bounded_ = false;
};

/// QoS-constrained multi-group multicast beamforming instance.
///
/// Indices are zero-based in memory: users k in [0, K), groups in [0, M),
/// antennas in [0, N). File formats use one-based group labels.
struct ProblemInstance {
  Index antennas = 0;                  // N
  std::size_t users = 0;               // K
  std::size_t groups = 0;              // M
  std::vector<std::size_t> group_of;   // g_k, size K
  std::vector<CVector> channels;       // h_k, size K, each of length N
  std::vector<double> sinr_target;     // gamma_k > 0 (linear)
  std::vector<double> noise_power;     // sigma_k^2 > 0
  std::vector<PowerCap> antenna_power; // p_i, size N

  /// Checks every structural invariant: consistent sizes, each group
  /// nonempty, positive targets and noise, and nonzero channels.
  /// Throws std::invalid_argument (DegenerateChannel for h_k = 0).
  void validate() const;

  /// Q_k = h_k h_k^H
  HermitianMatrix channel_covariance(std::size_t k) const {
    return HermitianMatrix::outer(channels[k]);
  }
  std::vector<std::size_t> members(std::size_t group) const;
};

}  // namespace spocs
