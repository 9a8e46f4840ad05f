#include "dpclust/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace dpclust::kernels {

namespace {

struct Impl {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_sq_diff)(const double*, const double*, std::size_t);
  double (*slope_sq_diff)(const double*, const double*, std::size_t);
  void (*outer_accum)(double*, const double*, const double*, std::size_t);
  Backend backend;
};

constexpr Impl kScalar{scalar::dot, scalar::sum_sq_diff, scalar::slope_sq_diff,
                       scalar::outer_accum, Backend::scalar};

#if defined(DPCLUST_HAVE_AVX2_TU)
constexpr Impl kAvx2{avx2::dot, avx2::sum_sq_diff, avx2::slope_sq_diff,
                     avx2::outer_accum, Backend::avx2};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

const Impl* resolve() {
  const char* forced = std::getenv("DPCLUST_SIMD");
#if defined(DPCLUST_HAVE_AVX2_TU)
  if (forced && std::strcmp(forced, "scalar") == 0) return &kScalar;
  if (cpu_has_avx2()) return &kAvx2;
#else
  (void)forced;
#endif
  return &kScalar;
}

std::atomic<const Impl*> g_impl{nullptr};

const Impl* impl() {
  const Impl* p = g_impl.load(std::memory_order_acquire);
  if (!p) {
    p = resolve();
    g_impl.store(p, std::memory_order_release);
  }
  return p;
}

}  // namespace

Backend active_backend() { return impl()->backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::avx2: return "avx2";
    case Backend::scalar: default: return "scalar";
  }
}

bool set_backend(Backend b) {
  if (b == Backend::scalar) {
    g_impl.store(&kScalar, std::memory_order_release);
    return true;
  }
#if defined(DPCLUST_HAVE_AVX2_TU)
  if (b == Backend::avx2 && cpu_has_avx2()) {
    g_impl.store(&kAvx2, std::memory_order_release);
    return true;
  }
#endif
  return false;
}

double dot(const double* a, const double* b, std::size_t n) {
  return impl()->dot(a, b, n);
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  return impl()->sum_sq_diff(a, b, n);
}

double slope_sq_diff(const double* x, const double* y, std::size_t n) {
  return impl()->slope_sq_diff(x, y, n);
}

void outer_accum(double* g, const double* a, const double* b, std::size_t n) {
  impl()->outer_accum(g, a, b, n);
}

}  // namespace dpclust::kernels
