#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpclust {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A non-finite value appeared while stepping an SDE path.
struct SimulationError : Error {
  std::int64_t step = -1;
  SimulationError(const std::string& msg, std::int64_t step_index)
      : Error(msg), step(step_index) {}
};

/// The speed-measure normalizer C0 failed to converge (model not ergodic).
struct ErgodicityError : Error {
  using Error::Error;
};

/// Basis construction failed (bad support, degenerate Gram matrix, ...).
struct BasisError : Error {
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
struct QuadratureError : Error {
  using Error::Error;
};

/// Malformed input file or configuration.
struct InputError : Error {
  using Error::Error;
};

}  // namespace dpclust
