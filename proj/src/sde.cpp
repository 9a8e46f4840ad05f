#include "dpclust/sde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "dpclust/errors.hpp"
#include "dpclust/quadrature.hpp"
#include "dpclust/rng.hpp"

namespace dpclust {

namespace {

// Step for second differences; 1e-6 is fine for first differences but loses
// half the mantissa when squared, so the second-derivative step is eps^(1/4).
const double kFdStep1 = 1e-6;
const double kFdStep2 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);

double central_d1(const std::function<double(double)>& f, double x) {
  const double h = kFdStep1 * (1.0 + std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central_d2(const std::function<double(double)>& f, double x) {
  const double h = kFdStep2 * (1.0 + std::abs(x));
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

SDEModel SDEModel::with_fd_derivatives(std::function<double(double)> drift,
                                       std::function<double(double)> diffusion,
                                       double state_lo, double state_hi,
                                       double boundary_eps) {
  SDEModel m;
  m.drift = drift;
  m.diffusion = diffusion;
  m.drift_d1 = [drift](double x) { return central_d1(drift, x); };
  m.drift_d2 = [drift](double x) { return central_d2(drift, x); };
  m.diffusion_d1 = [diffusion](double x) { return central_d1(diffusion, x); };
  m.diffusion_d2 = [diffusion](double x) { return central_d2(diffusion, x); };
  m.state_lo = state_lo;
  m.state_hi = state_hi;
  m.boundary_eps = boundary_eps;
  return m;
}

double derivative_mismatch(const SDEModel& model, int points) {
  double lo = model.state_lo, hi = model.state_hi;
  if (!std::isfinite(lo)) lo = std::isfinite(hi) ? hi - 6.0 : -3.0;
  if (!std::isfinite(hi)) hi = lo + 6.0;
  // Central 80% of the interval; second differences are ill-conditioned
  // where the diffusion coefficient has a square-root boundary singularity.
  // The checker uses the five-point second-difference stencil, whose O(h^4)
  // truncation keeps it below the 1e-6 bar even near those points.
  const double margin = 0.1 * (hi - lo);
  const double a = lo + margin, b = hi - margin;
  const double step2 = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 5);
  const auto d2_5pt = [&](const std::function<double(double)>& f, double x) {
    const double h = step2 * (1.0 + std::abs(x));
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2 * h)) /
           (12.0 * h * h);
  };
  double worst = 0.0;
  auto rel = [](double got, double want) {
    return std::abs(got - want) /
           std::max({std::abs(got), std::abs(want), 1.0});
  };
  for (int i = 0; i < points; ++i) {
    const double x = a + (i + 0.5) * (b - a) / points;
    worst = std::max(worst, rel(model.drift_d1(x), central_d1(model.drift, x)));
    worst = std::max(worst, rel(model.drift_d2(x), d2_5pt(model.drift, x)));
    worst = std::max(worst,
                     rel(model.diffusion_d1(x), central_d1(model.diffusion, x)));
    worst = std::max(worst,
                     rel(model.diffusion_d2(x), d2_5pt(model.diffusion, x)));
  }
  return worst;
}

void SimulationConfig::validate() const {
  if (!(dt_fine > 0.0) || !std::isfinite(dt_fine))
    throw InputError("simulation: dt_fine must be positive and finite");
  if (n_fine < 1) throw InputError("simulation: n_fine must be >= 1");
  if (resample_every < 1)
    throw InputError("simulation: resample_every must be >= 1");
  if (n_fine % resample_every != 0)
    throw InputError("simulation: n_fine must be divisible by resample_every");
  if (!std::isfinite(x0)) throw InputError("simulation: x0 must be finite");
}

double milstein2_step(const SDEModel& model, double x, double dt, double z) {
  const double b = model.drift(x);
  const double b1 = model.drift_d1(x);
  const double b2 = model.drift_d2(x);
  const double s = model.diffusion(x);
  const double s1 = model.diffusion_d1(x);
  const double s2 = model.diffusion_d2(x);
  const double sqdt = std::sqrt(dt);

  double next = x + (b - 0.5 * s * s1) * dt + s * sqdt * z +
                0.5 * s * s1 * dt * z * z +
                dt * sqdt * (0.5 * b * s1 + 0.5 * b1 * s + 0.25 * s * s * s2) * z +
                dt * dt * (0.5 * b * b1 + 0.25 * b2 * s * s);
  if (model.bounded()) next = model.clamp(next);
  return next;
}

Path simulate_path(const SDEModel& model, const SimulationConfig& cfg,
                   std::string label) {
  cfg.validate();
  if (cfg.x0 <= model.state_lo || cfg.x0 >= model.state_hi)
    throw InputError("simulation: x0 outside the state interval");

  PhiloxRng rng(cfg.seed, cfg.stream);
  Path path;
  path.label = std::move(label);
  path.delta = cfg.delta();
  path.values.reserve(static_cast<std::size_t>(cfg.n_fine / cfg.resample_every) + 1);

  double x = model.bounded() ? model.clamp(cfg.x0) : cfg.x0;
  path.values.push_back(x);
  for (std::int64_t i = 1; i <= cfg.n_fine; ++i) {
    x = milstein2_step(model, x, cfg.dt_fine, rng.next_normal());
    if (!std::isfinite(x))
      throw SimulationError("simulation produced a non-finite value at step " +
                                std::to_string(i),
                            i);
    if (i % cfg.resample_every == 0) path.values.push_back(x);
  }
  return path;
}

namespace {

SDEModel linear_drift_model(double rate, double target,
                            std::function<double(double)> s,
                            std::function<double(double)> s1,
                            std::function<double(double)> s2, double lo,
                            double hi) {
  SDEModel m;
  m.drift = [rate, target](double x) { return rate * (target - x); };
  m.drift_d1 = [rate](double) { return -rate; };
  m.drift_d2 = [](double) { return 0.0; };
  m.diffusion = std::move(s);
  m.diffusion_d1 = std::move(s1);
  m.diffusion_d2 = std::move(s2);
  m.state_lo = lo;
  m.state_hi = hi;
  m.boundary_eps = 1e-6;
  return m;
}

// sigma(x) = sqrt(c x (1 - x)) on (0, 1)
SDEModel sqrt_quadratic_model(double rate, double target, double c) {
  auto s = [c](double x) { return std::sqrt(c * x * (1.0 - x)); };
  auto s1 = [c](double x) {
    const double g = c * x * (1.0 - x);
    return c * (1.0 - 2.0 * x) / (2.0 * std::sqrt(g));
  };
  auto s2 = [c](double x) {
    const double g = c * x * (1.0 - x);
    const double g1 = c * (1.0 - 2.0 * x);
    const double g2 = -2.0 * c;
    return (2.0 * g * g2 - g1 * g1) / (4.0 * g * std::sqrt(g));
  };
  return linear_drift_model(rate, target, s, s1, s2, 0.0, 1.0);
}

// sigma(x) = 0.5 + 2 x (1 - x), positive on ((1 - sqrt 2)/2, (1 + sqrt 2)/2)
SDEModel parabolic_sigma_model(double rate, double target) {
  auto s = [](double x) { return 0.5 + 2.0 * x * (1.0 - x); };
  auto s1 = [](double x) { return 2.0 - 4.0 * x; };
  auto s2 = [](double) { return -4.0; };
  const double lo = 0.5 * (1.0 - std::sqrt(2.0));
  const double hi = 0.5 * (1.0 + std::sqrt(2.0));
  return linear_drift_model(rate, target, s, s1, s2, lo, hi);
}

const std::vector<std::pair<std::string, SDEModel>>& suite_models() {
  static const std::vector<std::pair<std::string, SDEModel>> models = [] {
    std::vector<std::pair<std::string, SDEModel>> v;
    const SDEModel b1s1 = parabolic_sigma_model(2.0, 0.5);     // b1 = 1 - 2x
    const SDEModel b2s2 = sqrt_quadratic_model(1.5, 0.9, 0.55);
    const SDEModel b2s3 = sqrt_quadratic_model(1.5, 0.9, 0.1);
    const SDEModel b1s3 = sqrt_quadratic_model(2.0, 0.5, 0.1);
    const SDEModel b3s2 = sqrt_quadratic_model(1.5, 0.5, 0.55);
    const SDEModel b4s4 = sqrt_quadratic_model(5.0, 0.05, 0.8);
    v.emplace_back("X1", b1s1);
    v.emplace_back("X2", b2s2);
    v.emplace_back("X3", b2s2);
    v.emplace_back("X4", b2s3);
    v.emplace_back("X5", b1s3);
    v.emplace_back("X6", b3s2);
    v.emplace_back("X7", b3s2);
    v.emplace_back("X8", b4s4);
    v.emplace_back("X9", b1s1);  // reflection of X1 solves the same SDE
    v.emplace_back("X10", b1s1);
    return v;
  }();
  return models;
}

}  // namespace

const SDEModel& synthetic_model(std::string_view label) {
  for (const auto& [name, model] : suite_models())
    if (name == label) return model;
  throw InputError("unknown synthetic model label: " + std::string(label));
}

std::vector<Path> synthetic_suite(std::uint64_t seed, std::int64_t n_fine,
                                  double dt_fine,
                                  std::int64_t resample_every) {
  std::vector<Path> paths(10);
  for (std::uint64_t p = 1; p <= 10; ++p) {
    if (p == 9) continue;
    const std::string label = "X" + std::to_string(p);
    const SDEModel& model = synthetic_model(label);

    PhiloxRng x0_rng(seed, x0_stream(p));
    const double w = model.state_hi - model.state_lo;
    const double x0 =
        model.state_lo + (0.2 + 0.6 * x0_rng.next_uniform()) * w;

    SimulationConfig cfg;
    cfg.dt_fine = dt_fine;
    cfg.n_fine = n_fine;
    cfg.resample_every = resample_every;
    cfg.seed = seed;
    cfg.stream = p;
    cfg.x0 = x0;
    paths[p - 1] = simulate_path(model, cfg, label);
  }
  // X9 is the reflection of X1 around 1, not an independent simulation.
  Path reflected;
  reflected.label = "X9";
  reflected.delta = paths[0].delta;
  reflected.values.reserve(paths[0].values.size());
  for (double v : paths[0].values) reflected.values.push_back(1.0 - v);
  paths[8] = std::move(reflected);
  return paths;
}

std::vector<double> invariant_density(const SDEModel& model,
                                      const std::vector<double>& grid,
                                      double abs_tol) {
  const double lo = model.state_lo, hi = model.state_hi;
  for (double x : grid)
    if (!(x > lo && x < hi))
      throw InputError("invariant_density: grid point outside state interval");

  double ref;  // base point of the scale-function integral
  if (std::isfinite(lo) && std::isfinite(hi)) ref = 0.5 * (lo + hi);
  else if (std::isfinite(lo)) ref = lo + 1.0;
  else if (std::isfinite(hi)) ref = hi - 1.0;
  else ref = 0.0;

  auto ratio = [&model](double y) {
    const double s = model.diffusion(y);
    return 2.0 * model.drift(y) / (s * s);
  };
  AdaptiveOptions opt;
  opt.abs_tol = abs_tol;

  auto speed = [&](double x) {
    const double expo = integrate_gk(ratio, ref, x, opt);
    if (expo > 700.0)
      throw ErgodicityError("speed measure overflows; model not ergodic");
    const double s = model.diffusion(x);
    return std::exp(expo) / (s * s);
  };

  // Singular endpoints are shrunk away by an absolute 1e-8 margin.
  const double qlo = std::isfinite(lo) ? lo + 1e-8 : lo;
  const double qhi = std::isfinite(hi) ? hi - 1e-8 : hi;
  double c0;
  try {
    c0 = integrate_gk_infinite(speed, qlo, qhi, opt);
  } catch (const QuadratureError& e) {
    throw ErgodicityError(std::string("speed measure does not integrate: ") +
                          e.what());
  }
  if (!std::isfinite(c0) || c0 <= 0.0)
    throw ErgodicityError("speed measure normalizer is not positive/finite");

  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    density[i] = speed(grid[i]) / c0;
  return density;
}

}  // namespace dpclust
