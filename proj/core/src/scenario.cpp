#include "spocs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spocs/errors.hpp"
#include "spocs/rng.hpp"

namespace spocs {

namespace {

void check_shape(const Beamformer& w, const ProblemInstance& instance) {
  if (w.groups() != instance.groups) {
    throw DimensionMismatch("beamformer has the wrong number of groups");
  }
  for (const auto& v : w.vectors) {
    if (v.size() != instance.antennas) {
      throw DimensionMismatch("beamformer vector has the wrong length");
    }
  }
}

// Received amplitude of group l at user k: w_l^H h_k.
Complex response(const Beamformer& w, std::size_t l, const CVector& h) {
  return w.vectors[l].dot(h);
}

double sinr_with_noise(const Beamformer& w, const ProblemInstance& instance, std::size_t k,
                       double noise) {
  const CVector& h = instance.channels[k];
  const std::size_t g = instance.group_of[k];
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t l = 0; l < instance.groups; ++l) {
    const double p = std::norm(response(w, l, h));
    if (l == g) {
      signal = p;
    } else {
      interference += p;
    }
  }
  return signal / (interference + noise);
}

}  // namespace

ProblemInstance generate_instance(const ScenarioSpec& spec) {
  if (spec.antennas <= 0 || spec.users == 0 || spec.groups == 0) {
    throw std::invalid_argument("generate_instance: N, K and M must be positive");
  }
  if (spec.groups > spec.users) {
    throw std::invalid_argument("generate_instance: more groups than users");
  }
  if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) {
    throw std::invalid_argument("generate_instance: gamma must be positive and finite");
  }
  if (!(spec.sigma2 > 0.0) || !std::isfinite(spec.sigma2)) {
    throw std::invalid_argument("generate_instance: sigma2 must be positive and finite");
  }

  ProblemInstance inst;
  inst.antennas = spec.antennas;
  inst.users = spec.users;
  inst.groups = spec.groups;

  const std::size_t base = spec.users / spec.groups;
  const std::size_t extra = spec.users % spec.groups;
  inst.group_of.reserve(spec.users);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    inst.group_of.insert(inst.group_of.end(), size, g);
  }

  Rng rng(spec.seed);
  inst.channels.reserve(spec.users);
  for (std::size_t k = 0; k < spec.users; ++k) {
    CVector h(spec.antennas);
    for (Index i = 0; i < spec.antennas; ++i) h(i) = rng.complex_normal(spec.sigma2);
    inst.channels.push_back(std::move(h));
  }
  inst.sinr_target.assign(spec.users, spec.gamma);
  inst.noise_power.assign(spec.users, spec.sigma2);
  inst.antenna_power.assign(static_cast<std::size_t>(spec.antennas), spec.cap);
  inst.validate();
  return inst;
}

double scale_factor(const Beamformer& w, const ProblemInstance& instance, double p_sdr) {
  check_shape(w, instance);
  if (!(p_sdr > 0.0) || !std::isfinite(p_sdr)) {
    throw std::invalid_argument("scale_factor: P_sdr must be positive and finite");
  }
  const double total = w.total_power();
  if (!(total > 0.0)) throw std::invalid_argument("scale_factor: zero beamformer");
  double rho = p_sdr / total;
  for (Index i = 0; i < instance.antennas; ++i) {
    const PowerCap& cap = instance.antenna_power[static_cast<std::size_t>(i)];
    if (!cap.bounded()) continue;
    const double used = w.antenna_power(i);
    if (used > 0.0) rho = std::min(rho, cap.value() / used);
  }
  return rho;
}

std::vector<double> per_user_sinr(const Beamformer& w, const ProblemInstance& instance) {
  check_shape(w, instance);
  std::vector<double> out(instance.users);
  for (std::size_t k = 0; k < instance.users; ++k) {
    out[k] = sinr_with_noise(w, instance, k, instance.noise_power[k]);
  }
  return out;
}

double min_scaled_sinr(const Beamformer& w, const ProblemInstance& instance, double p_sdr) {
  const double rho = scale_factor(w, instance, p_sdr);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < instance.users; ++k) {
    worst = std::min(worst, sinr_with_noise(w, instance, k, instance.noise_power[k] / rho));
  }
  return worst;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace spocs
