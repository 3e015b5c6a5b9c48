#include "spocs/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spocs/errors.hpp"

namespace spocs {

PowerCap PowerCap::of(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("PowerCap: cap must be positive and finite, got " +
                                std::to_string(value));
  }
  PowerCap p;
  p.value_ = value;
  p.bounded_ = true;
  return p;
}

void ProblemInstance::validate() const {
  if (antennas <= 0) throw std::invalid_argument("instance: N must be positive");
  if (users == 0) throw std::invalid_argument("instance: K must be positive");
  if (groups == 0) throw std::invalid_argument("instance: M must be positive");
  if (group_of.size() != users || channels.size() != users || sinr_target.size() != users ||
      noise_power.size() != users) {
    throw std::invalid_argument("instance: per-user arrays must have K = " +
                                std::to_string(users) + " entries");
  }
  if (antenna_power.size() != static_cast<std::size_t>(antennas)) {
    throw std::invalid_argument("instance: antenna power caps must have N = " +
                                std::to_string(antennas) + " entries");
  }
  std::vector<std::size_t> count(groups, 0);
  for (std::size_t k = 0; k < users; ++k) {
    if (group_of[k] >= groups) {
      throw std::invalid_argument("instance: user " + std::to_string(k + 1) +
                                  " assigned to nonexistent group");
    }
    ++count[group_of[k]];
    if (channels[k].size() != antennas) {
      throw std::invalid_argument("instance: channel " + std::to_string(k + 1) +
                                  " has wrong length");
    }
    if (!channels[k].allFinite()) {
      throw std::invalid_argument("instance: channel " + std::to_string(k + 1) +
                                  " has non-finite entries");
    }
    if (channels[k].squaredNorm() == 0.0) {
      throw DegenerateChannel("instance: channel of user " + std::to_string(k + 1) +
                              " is zero; its SINR constraint cannot be met");
    }
    if (!(sinr_target[k] > 0.0) || !std::isfinite(sinr_target[k])) {
      throw std::invalid_argument("instance: SINR targets must be positive and finite");
    }
    if (!(noise_power[k] > 0.0) || !std::isfinite(noise_power[k])) {
      throw std::invalid_argument("instance: noise powers must be positive and finite");
    }
  }
  for (std::size_t m = 0; m < groups; ++m) {
    if (count[m] == 0) {
      throw std::invalid_argument("instance: group " + std::to_string(m + 1) + " has no members");
    }
  }
}

std::vector<std::size_t> ProblemInstance::members(std::size_t group) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < users; ++k) {
    if (group_of[k] == group) out.push_back(k);
  }
  return out;
}

}  // namespace spocs
