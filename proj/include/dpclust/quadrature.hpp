#pragma once

#include <functional>
#include <vector>

namespace dpclust {

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on the Legendre
/// recurrence and cached per n. Thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrates f over [a, b] (a > b allowed) with the n-point rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n);

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  // Scale guard for integrals whose magnitude is far from 1; the accept
  // threshold is max(abs_tol, rel_tol * |integral|).
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod 15(7) integration over a finite interval.
/// Throws QuadratureError when the tolerance cannot be met within the
/// interval budget (the signal used to detect divergent integrands).
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    const AdaptiveOptions& opt = {});

/// Same, with either endpoint allowed to be infinite (mapped to a finite
/// interval by a rational change of variable before adapting).
double integrate_gk_infinite(const std::function<double(double)>& f, double a,
                             double b, const AdaptiveOptions& opt = {});

}  // namespace dpclust
