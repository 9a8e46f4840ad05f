#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "dpclust/rng.hpp"

using namespace dpclust;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 distribution (kat_vectors).
  const auto zeros = PhiloxRng::block({0, 0, 0, 0}, {0, 0});
  CHECK(zeros[0] == 0x6627e8d5u);
  CHECK(zeros[1] == 0xe169c58du);
  CHECK(zeros[2] == 0xbc57ac4cu);
  CHECK(zeros[3] == 0x9b00dbd8u);

  const auto ones = PhiloxRng::block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("same seed reproduces, different seed or stream diverges") {
  PhiloxRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  PhiloxRng c(42), d(43), e(42, 1);
  bool seed_differs = false, stream_differs = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = c.next_u64();
    if (x != d.next_u64()) seed_differs = true;
    if (x != e.next_u64()) stream_differs = true;
  }
  CHECK(seed_differs);
  CHECK(stream_differs);
}

TEST_CASE("x0_stream never collides with path streams") {
  std::set<std::uint64_t> ids;
  for (std::uint64_t p = 0; p < 64; ++p) {
    ids.insert(p);
    ids.insert(x0_stream(p));
  }
  CHECK(ids.size() == 128);
}

TEST_CASE("uniforms live strictly inside (0,1) with sane moments") {
  PhiloxRng rng(7);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // Standard error of the mean is ~6.5e-4; allow 5 sigma.
  CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normals have standard moments") {
  PhiloxRng rng(8);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  CHECK(std::abs(m1) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}
