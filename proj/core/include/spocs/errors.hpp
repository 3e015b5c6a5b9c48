#pragma once

#include <stdexcept>
#include <string>

namespace spocs {

/// Operands of a Hilbert-space operation have different shapes.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A user channel is (numerically) zero, so its SINR halfspace has a zero normal.
class DegenerateChannel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The SDR optimum estimate did not reach its feasibility tolerance and must
/// not be used for metric computation.
class UnreliableEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spocs
