#pragma once

#include <cstdint>
#include <random>

#include "spocs/hilbert.hpp"

namespace spocs {

/// Reproducible random source for instance synthesis.
///
/// Algorithm "mt19937_64-bm/1": std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) feeding 53-bit uniforms and a Box-Muller transform.
/// std::normal_distribution is not used because its output is
/// implementation-defined. Changing anything here changes every generated
/// instance; bump kRngAlgorithm when that happens.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Circularly-symmetric complex normal with E|z|^2 = variance.
  Complex complex_normal(double variance);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline constexpr const char* kRngAlgorithm = "mt19937_64-bm/1";

}  // namespace spocs
