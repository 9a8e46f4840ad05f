#include "dpclust/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

#include "dpclust/errors.hpp"

namespace dpclust {

namespace {

GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

// Gauss-Kronrod 15(7) on [-1, 1]; positive half, descending. The Kronrod
// points interleave the 7 Legendre nodes (odd indices below).
constexpr double kKronrodNodes[8] = {
    0.9914553711208126392069, 0.9491079123427585245262,
    0.8648644233597690727897, 0.7415311855993944398639,
    0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};
constexpr double kKronrodWeights[8] = {
    0.02293532201052922496373, 0.0630920926299785532907,
    0.1047900103222501838399,  0.1406532597155259187452,
    0.1690047266392679028266,  0.1903505780647854099133,
    0.2044329400752988924142,  0.209482141084727828013};
constexpr double kGaussWeights[4] = {
    0.1294849661688696932706, 0.2797053914892766679015,
    0.3818300505051189449504, 0.4179591836734693877551};

struct Segment {
  double a, b;
  double value;
  double error;
};

// One K15 application on [a, b] with the QUADPACK-style error estimate.
Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  fv[7] = f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    fv[i] = f(center - dx);
    fv[14 - i] = f(center + dx);
  }

  double resk = kKronrodWeights[7] * fv[7];
  double resg = kGaussWeights[3] * fv[7];
  double resabs = std::abs(resk);
  for (int i = 0; i < 7; ++i) {
    const double sum = fv[i] + fv[14 - i];
    resk += kKronrodWeights[i] * sum;
    resabs += kKronrodWeights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * sum;
  }
  const double mean = resk * 0.5;
  double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] *
              (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  resasc *= std::abs(half);
  resabs *= std::abs(half);

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * resabs);

  return Segment{a, b, resk * half, err};
}

struct WorstFirst {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    return lhs.error < rhs.error;
  }
};

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw QuadratureError("gauss_legendre: n must be >= 1");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += rule.weights[i] * f(center + half * rule.nodes[i]);
  return acc * half;
}

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (!std::isfinite(a) || !std::isfinite(b))
    throw QuadratureError("integrate_gk: endpoints must be finite");

  std::priority_queue<Segment, std::vector<Segment>, WorstFirst> queue;
  queue.push(gk15(f, a, b));
  double total = queue.top().value;
  double total_err = queue.top().error;
  int segments = 1;

  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (segments >= opt.max_intervals)
      throw QuadratureError("adaptive quadrature did not converge");
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw QuadratureError("adaptive quadrature stalled on a zero-width span");
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++segments;
    if (!std::isfinite(total))
      throw QuadratureError("adaptive quadrature produced a non-finite value");
  }
  return sign * total;
}

double integrate_gk_infinite(const std::function<double(double)>& f, double a,
                             double b, const AdaptiveOptions& opt) {
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return integrate_gk(f, a, b, opt);
  if (lo_inf && hi_inf) {
    // x = t / (1 - t^2), t in (-1, 1)
    auto g = [&f](double t) {
      const double q = 1.0 - t * t;
      const double x = t / q;
      return f(x) * (1.0 + t * t) / (q * q);
    };
    return integrate_gk(g, -1.0 + 1e-14, 1.0 - 1e-14, opt);
  }
  if (hi_inf) {
    // x = a + t / (1 - t), t in (0, 1)
    auto g = [&f, a](double t) {
      const double q = 1.0 - t;
      return f(a + t / q) / (q * q);
    };
    return integrate_gk(g, 0.0, 1.0 - 1e-14, opt);
  }
  // x = b - t / (1 - t), t in (0, 1)
  auto g = [&f, b](double t) {
    const double q = 1.0 - t;
    return f(b - t / q) / (q * q);
  };
  return integrate_gk(g, 0.0, 1.0 - 1e-14, opt);
}

}  // namespace dpclust
