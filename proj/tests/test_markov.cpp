#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpclust/errors.hpp"
#include "dpclust/markov_op.hpp"
#include "dpclust/rng.hpp"

using namespace dpclust;

namespace {

Path random_path(PhiloxRng& rng, std::size_t n, double lo = 0.0,
                 double hi = 1.0) {
  Path p;
  p.delta = 0.1;
  p.values.resize(n);
  for (double& v : p.values) v = lo + (hi - lo) * rng.next_uniform();
  return p;
}

// Naive triple-loop evaluation of the symmetrized estimator.
std::vector<double> naive_operator(const Path& path,
                                   const OrthonormalBasis& basis) {
  const int j_max = basis.size();
  const std::size_t n = path.values.size() - 1;
  std::vector<double> out(static_cast<std::size_t>(j_max) * j_max, 0.0);
  for (int j = 0; j < j_max; ++j)
    for (int k = 0; k < j_max; ++k) {
      double sum = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        const auto prev = basis.eval(path.values[i - 1]);
        const auto cur = basis.eval(path.values[i]);
        sum += prev[j] * cur[k] + prev[k] * cur[j];
      }
      out[j * j_max + k] = sum / (2.0 * static_cast<double>(n));
    }
  return out;
}

}  // namespace

TEST_CASE("constant path collapses to an outer product") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 2, 6);
  Path p;
  p.values.assign(7, 0.4);
  const auto op = estimate_operator(p, basis);
  const auto phi = basis.eval(0.4);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k)
      CHECK(op.at(j, k) == doctest::Approx(phi[j] * phi[k]).epsilon(1e-13));
}

TEST_CASE("two-observation path matches the direct formula") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 1, 4);
  Path p;
  p.values = {0.2, 0.7};
  const auto op = estimate_operator(p, basis);
  CHECK(op.n_transitions == 1);
  const auto a = basis.eval(0.2);
  const auto b = basis.eval(0.7);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      CHECK(op.at(j, k) ==
            doctest::Approx(0.5 * (a[j] * b[k] + a[k] * b[j]))
                .epsilon(1e-14));
}

TEST_CASE("estimator matches the naive triple loop") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 3, 10);
  PhiloxRng rng(31);
  const Path p = random_path(rng, 101);
  const auto op = estimate_operator(p, basis);
  const auto naive = naive_operator(p, basis);
  CHECK(op.n_transitions == 100);
  for (int j = 0; j < 10; ++j)
    for (int k = 0; k < 10; ++k) {
      const double want = naive[j * 10 + k];
      const double scale = std::max(std::abs(want), 1e-30);
      CHECK(std::abs(op.at(j, k) - want) / scale < 1e-12);
    }
}

TEST_CASE("entries are symmetric bitwise") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 3, 8);
  PhiloxRng rng(32);
  const Path p = random_path(rng, 64);
  const auto op = estimate_operator(p, basis);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) CHECK(op.at(j, k) == op.at(k, j));
}

TEST_CASE("path reversal leaves the estimate unchanged") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 3, 8);
  PhiloxRng rng(33);
  Path p = random_path(rng, 80);
  const auto fwd = estimate_operator(p, basis);
  std::reverse(p.values.begin(), p.values.end());
  const auto rev = estimate_operator(p, basis);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k)
      CHECK(fwd.at(j, k) == doctest::Approx(rev.at(j, k)).epsilon(1e-12));
}

TEST_CASE("self-concatenation changes entries by O(1/N) only") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 3, 8);
  PhiloxRng rng(34);
  Path p = random_path(rng, 501);
  Path doubled = p;
  doubled.values.insert(doubled.values.end(), p.values.begin() + 1,
                        p.values.end());
  const auto one = estimate_operator(p, basis);
  const auto two = estimate_operator(doubled, basis);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k)
      CHECK(std::abs(one.at(j, k) - two.at(j, k)) < 1e-2);
}

TEST_CASE("paths fully outside the support give the zero matrix") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 2, 6);
  Path p;
  p.values = {1.5, 2.0, 1.8, 2.2};
  const auto op = estimate_operator(p, basis);
  CHECK(op.all_zero());
}

TEST_CASE("degenerate inputs are rejected") {
  const auto basis = OrthonormalBasis::build({0.0, 1.0}, 2, 6);
  Path p;
  p.values = {0.5};
  CHECK_THROWS_AS(estimate_operator(p, basis), InputError);
  p.values = {0.5, std::nan("")};
  CHECK_THROWS_AS(estimate_operator(p, basis), InputError);
}
