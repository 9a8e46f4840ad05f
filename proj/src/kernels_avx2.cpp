// AVX2+FMA variants of the inner-loop kernels. This translation unit is
// compiled with -mavx2 -mfma and must only be entered after the dispatcher
// has confirmed CPU support.

#include "dpclust/kernels.hpp"

#include <immintrin.h>

namespace dpclust::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  if (i + 4 <= n) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double slope_sq_diff(const double* x, const double* y, std::size_t n) {
  if (n < 2) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(x + i - 1));
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(y + i - 1));
    const __m256d d = _mm256_sub_pd(dx, dy);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = (x[i] - x[i - 1]) - (y[i] - y[i - 1]);
    s += d * d;
  }
  return s;
}

void outer_accum(double* g, const double* a, const double* b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const __m256d aj = _mm256_set1_pd(a[j]);
    double* row = g + j * n;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
      const __m256d r = _mm256_loadu_pd(row + k);
      _mm256_storeu_pd(row + k, _mm256_fmadd_pd(aj, _mm256_loadu_pd(b + k), r));
    }
    for (; k < n; ++k) row[k] += a[j] * b[k];
  }
}

}  // namespace dpclust::kernels::avx2
