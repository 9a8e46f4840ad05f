#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpclust/bspline.hpp"
#include "dpclust/errors.hpp"
#include "dpclust/quadrature.hpp"
#include "dpclust/rng.hpp"

using namespace dpclust;

namespace {

// Gram entry <phi_j, phi_k> by composite 64-point Gauss-Legendre per span;
// recomputed here, independently of the build-time accumulation.
double gram_entry(const OrthonormalBasis& basis, int j, int k) {
  const std::vector<double>& knots = basis.knots();
  double total = 0.0;
  for (std::size_t s = basis.degree();
       s + basis.degree() + 1 < knots.size(); ++s) {
    const double a = knots[s], b = knots[s + 1];
    if (b <= a) continue;
    total += integrate_gl(
        [&](double x) {
          std::vector<double> phi(basis.size());
          basis.eval(x, phi.data());
          return phi[j] * phi[k];
        },
        a, b, 64);
  }
  return total;
}

double max_gram_deviation(const OrthonormalBasis& basis) {
  double worst = 0.0;
  for (int j = 0; j < basis.size(); ++j)
    for (int k = 0; k <= j; ++k) {
      const double want = (j == k) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram_entry(basis, j, k) - want));
    }
  return worst;
}

}  // namespace

TEST_CASE("detect_support arithmetic") {
  Path a{{0.1, 0.5}, 1.0, "a"};
  Path b{{0.3, 0.9}, 1.0, "b"};
  const SupportInterval s = detect_support({a, b}, 0.1);
  CHECK(s.lo == doctest::Approx(0.06));
  CHECK(s.hi == doctest::Approx(0.94));

  const SupportInterval tight = detect_support({a, b}, 0.0);
  CHECK(tight.lo == 0.1);
  CHECK(tight.hi == 0.9);

  Path flat{{0.5, 0.5, 0.5}, 1.0, "flat"};
  const SupportInterval wide = detect_support({flat}, 0.1);
  CHECK(wide.lo == doctest::Approx(0.0));
  CHECK(wide.hi == doctest::Approx(1.0));

  CHECK_THROWS_AS(detect_support({}, 0.1), InputError);
}

TEST_CASE("degree 0 basis: scaled indicators") {
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 1.0}, 0, 4);
  // Four width-1/4 indicator functions; unit L2 norm means height 2.
  for (int j = 0; j < 4; ++j) {
    const double inside = 0.25 * j + 0.125;
    std::vector<double> phi = basis.eval(inside);
    for (int k = 0; k < 4; ++k)
      CHECK(phi[k] == doctest::Approx(k == j ? 2.0 : 0.0));
  }
}

TEST_CASE("degree 10, J=20 has 9 interior knots") {
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 1.0}, 10, 20);
  // Clamped vector: 11 copies of each endpoint + interior = 20 + 11.
  REQUIRE(basis.knots().size() == 31);
  int interior = 0;
  for (double t : basis.knots())
    if (t > 0.0 && t < 1.0) ++interior;
  CHECK(interior == 9);
}

TEST_CASE("degree 1, J=3: Gram and Cholesky by hand") {
  // Raw hats on knots 0, 0, 1/2, 1, 1 with peaks at 0, 1/2, 1. On [0,1]:
  //   <h0,h0> = 1/6, <h0,h1> = 1/12, <h1,h1> = 1/3, <h1,h2> = 1/12,
  //   <h2,h2> = 1/6, <h0,h2> = 0  (standard hat-function integrals).
  const double g00 = 1.0 / 6.0, g01 = 1.0 / 12.0, g11 = 1.0 / 3.0;
  const double g12 = 1.0 / 12.0, g22 = 1.0 / 6.0;

  // Hand Cholesky G = L L^T.
  const double l00 = std::sqrt(g00);
  const double l10 = g01 / l00;
  const double l11 = std::sqrt(g11 - l10 * l10);
  const double l21 = g12 / l11;  // l20 = 0 because <h0,h2> = 0
  const double l22 = std::sqrt(g22 - l21 * l21);

  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 1.0}, 1, 3);
  // mix = L^{-1}; verify by applying it to hand-computed raw values.
  for (double x : {0.1, 0.35, 0.5, 0.62, 0.99}) {
    double raw[3];
    basis.eval_raw(x, raw);
    const double e0 = raw[0] / l00;
    const double e1 = (raw[1] - l10 * e0) / l11;
    const double e2 = (raw[2] - l21 * e1) / l22;
    const std::vector<double> got = basis.eval(x);
    CHECK(got[0] == doctest::Approx(e0).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(e1).epsilon(1e-12));
    CHECK(got[2] == doctest::Approx(e2).epsilon(1e-12));
  }
}

TEST_CASE("orthonormality across degree/size settings") {
  CHECK(max_gram_deviation(OrthonormalBasis::build({0.0, 1.0}, 0, 4)) < 1e-8);
  CHECK(max_gram_deviation(OrthonormalBasis::build({0.0, 1.0}, 1, 5)) < 1e-8);
  CHECK(max_gram_deviation(OrthonormalBasis::build({-0.3, 2.1}, 3, 10)) <
        1e-8);
  CHECK(max_gram_deviation(OrthonormalBasis::build({0.0, 1.0}, 10, 20)) <
        1e-8);
}

TEST_CASE("evaluation outside the support is zero") {
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.2, 0.8}, 3, 10);
  for (double x : {0.0, 0.19999, 0.80001, 1.0, -5.0, 5.0}) {
    for (double v : basis.eval(x)) CHECK(v == 0.0);
  }
  // Boundary points evaluate (closed support), nonzero at the edges.
  CHECK(basis.eval(0.2)[0] != 0.0);
  CHECK(basis.eval(0.8)[9] != 0.0);
}

TEST_CASE("raw B-splines form a partition of unity") {
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 2.0}, 3, 12);
  PhiloxRng rng(21);
  for (int i = 0; i < 200; ++i) {
    const double x = 2.0 * rng.next_uniform();
    double raw[12];
    basis.eval_raw(x, raw);
    double sum = 0.0;
    for (double v : raw) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("orthonormal functions are continuous for degree >= 1") {
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 1.0}, 3, 10);
  PhiloxRng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_uniform();
    const auto lo = basis.eval(std::max(0.0, x - 1e-9));
    const auto hi = basis.eval(std::min(1.0, x + 1e-9));
    for (int j = 0; j < basis.size(); ++j)
      CHECK(std::abs(hi[j] - lo[j]) < 1e-6);
  }
}

TEST_CASE("orthonormalization preserves the raw span") {
  // Project each raw spline onto the orthonormal set and compare the
  // reconstruction pointwise; the residual must vanish.
  const OrthonormalBasis basis =
      OrthonormalBasis::build({0.0, 1.0}, 2, 7);
  const int j_raw = 4;
  const std::vector<double>& knots = basis.knots();
  std::vector<double> coef(basis.size(), 0.0);
  for (int k = 0; k < basis.size(); ++k) {
    // Per-span quadrature: the integrand is polynomial on each span.
    for (std::size_t s = basis.degree();
         s + basis.degree() + 1 < knots.size(); ++s) {
      if (knots[s + 1] <= knots[s]) continue;
      coef[k] += integrate_gl(
          [&](double x) {
            double raw[7];
            basis.eval_raw(x, raw);
            return raw[j_raw] * basis.eval(x)[k];
          },
          knots[s], knots[s + 1], 64);
    }
  }
  double worst = 0.0;
  PhiloxRng rng(23);
  for (int i = 0; i < 300; ++i) {
    const double x = rng.next_uniform();
    double raw[7];
    basis.eval_raw(x, raw);
    double rebuilt = 0.0;
    const auto phi = basis.eval(x);
    for (int k = 0; k < basis.size(); ++k) rebuilt += coef[k] * phi[k];
    worst = std::max(worst, std::abs(rebuilt - raw[j_raw]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(OrthonormalBasis::build({0.0, 1.0}, 3, 3), BasisError);
  CHECK_THROWS_AS(OrthonormalBasis::build({0.0, 1.0}, -1, 5), BasisError);
  CHECK_THROWS_AS(OrthonormalBasis::build({1.0, 1.0}, 1, 5), BasisError);
  CHECK_THROWS_AS(OrthonormalBasis::build({0.0, 1.0}, 61, 80), BasisError);
}

TEST_CASE("fingerprints distinguish bases") {
  const auto a = OrthonormalBasis::build({0.0, 1.0}, 3, 10);
  const auto b = OrthonormalBasis::build({0.0, 1.0}, 3, 11);
  const auto c = OrthonormalBasis::build({0.0, 1.1}, 3, 10);
  const auto a2 = OrthonormalBasis::build({0.0, 1.0}, 3, 10);
  CHECK(a.fingerprint() == a2.fingerprint());
  CHECK(a.fingerprint() != b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}
