#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace dpclust {

/// Scalar diffusion dX = b(X) dt + sigma(X) dW on the interval
/// (state_lo, state_hi), with the coefficient derivatives needed by the
/// second Milstein scheme. Immutable after construction.
struct SDEModel {
  std::function<double(double)> drift;
  std::function<double(double)> drift_d1;
  std::function<double(double)> drift_d2;
  std::function<double(double)> diffusion;
  std::function<double(double)> diffusion_d1;
  std::function<double(double)> diffusion_d2;
  double state_lo = -std::numeric_limits<double>::infinity();
  double state_hi = std::numeric_limits<double>::infinity();
  double boundary_eps = 1e-6;

  bool bounded() const {
    return std::isfinite(state_lo) && std::isfinite(state_hi);
  }

  /// Clamp into [state_lo + boundary_eps, state_hi - boundary_eps];
  /// identity for unbounded intervals.
  double clamp(double x) const {
    if (std::isfinite(state_lo) && x < state_lo + boundary_eps)
      x = state_lo + boundary_eps;
    if (std::isfinite(state_hi) && x > state_hi - boundary_eps)
      x = state_hi - boundary_eps;
    return x;
  }

  /// Builds a model from (b, sigma) alone, deriving the four derivative
  /// closures by central finite differences with step 1e-6 * (1 + |x|).
  static SDEModel with_fd_derivatives(std::function<double(double)> drift,
                                      std::function<double(double)> diffusion,
                                      double state_lo, double state_hi,
                                      double boundary_eps = 1e-6);
};

/// Checks the analytic derivative closures against central finite
/// differences at `points` interior test points; returns the worst relative
/// error observed.
double derivative_mismatch(const SDEModel& model, int points = 100);

/// A uniformly sampled scalar series with its observation mesh.
struct Path {
  std::vector<double> values;
  double delta = 1.0;
  std::string label;
};

struct SimulationConfig {
  double dt_fine = 1e-4;
  std::int64_t n_fine = 500000;
  std::int64_t resample_every = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double x0 = 0.5;

  double delta() const { return static_cast<double>(resample_every) * dt_fine; }
  void validate() const;  // throws InputError on violation
};

/// One step of the second Milstein scheme:
///   x' = x + (b - s*s1/2) dt + s sqrt(dt) z + s*s1/2 dt z^2
///        + dt^{3/2} (b*s1/2 + b1*s/2 + s^2*s2/4) z
///        + dt^2 (b*b1/2 + b2*s^2/4)
/// clamped into the state interval when it is bounded.
double milstein2_step(const SDEModel& model, double x, double dt, double z);

/// Integrates n_fine steps at dt_fine from cfg.x0 and keeps every
/// resample_every-th point. Deterministic in (seed, stream).
Path simulate_path(const SDEModel& model, const SimulationConfig& cfg,
                   std::string label = {});

/// The ten-path synthetic suite: drift/diffusion pairs
///   b1 = 1 - 2x            s1 = 0.5 + 2x(1-x)
///   b2 = 1.5(0.9 - x)      s2 = sqrt(0.55 x(1-x))
///   b3 = 1.5(0.5 - x)      s3 = sqrt(0.10 x(1-x))
///   b4 = 5(0.05 - x)       s4 = sqrt(0.80 x(1-x))
/// with X1,X10 <- (b1,s1), X2,X3 <- (b2,s2), X4 <- (b2,s3), X5 <- (b1,s3),
/// X6,X7 <- (b3,s2), X8 <- (b4,s4) and X9 = 1 - X1 computed pointwise.
/// Path p simulates from stream p of the given seed; its initial value is
/// uniform on the central 60% of the state interval, drawn from the
/// x0_stream(p) side stream.
std::vector<Path> synthetic_suite(std::uint64_t seed,
                                  std::int64_t n_fine = 500000,
                                  double dt_fine = 1e-4,
                                  std::int64_t resample_every = 1000);

/// Generating model for a suite label ("X1".."X10"); X9 maps to the (b1,s1)
/// model its reflection satisfies.
const SDEModel& synthetic_model(std::string_view label);

/// Invariant density mu_{b,sigma} on the grid points, from the scale
/// function / speed measure by nested adaptive quadrature, normalized so the
/// density integrates to 1 over the state interval. `abs_tol` controls both
/// quadrature levels. Throws ErgodicityError when the normalizer diverges.
std::vector<double> invariant_density(const SDEModel& model,
                                      const std::vector<double>& grid,
                                      double abs_tol = 1e-10);

}  // namespace dpclust
