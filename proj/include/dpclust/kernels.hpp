#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the distance and operator-estimation
// code paths. Every kernel has a scalar reference implementation and, on
// x86-64 CPUs with AVX2+FMA, a vectorized variant selected once at runtime.
// The two variants are equivalence-tested against each other; results may
// differ by a few ulps because the vector code reorders the accumulation.

namespace dpclust::kernels {

enum class Backend { scalar, avx2 };

/// Backend currently used by the dispatching entry points.
Backend active_backend();
const char* backend_name(Backend b);

/// Force a backend. Returns false (and changes nothing) if the requested
/// backend is not available on this CPU. Honored process-wide; intended for
/// tests and the DPCLUST_SIMD=scalar|avx2 environment override.
bool set_backend(Backend b);

/// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

/// sum_i (a[i] - b[i])^2
double sum_sq_diff(const double* a, const double* b, std::size_t n);

/// sum_{i=1..n-1} ((x[i] - x[i-1]) - (y[i] - y[i-1]))^2
double slope_sq_diff(const double* x, const double* y, std::size_t n);

/// g (n x n, row-major) += a * b^T
void outer_accum(double* g, const double* a, const double* b, std::size_t n);

// Reference implementations, always available; the dispatchers above must
// agree with these up to rounding.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double slope_sq_diff(const double* x, const double* y, std::size_t n);
void outer_accum(double* g, const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(DPCLUST_HAVE_AVX2_TU)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double slope_sq_diff(const double* x, const double* y, std::size_t n);
void outer_accum(double* g, const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace dpclust::kernels
