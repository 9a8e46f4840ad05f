#include "dpclust/kernels.hpp"

namespace dpclust::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double slope_sq_diff(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = (x[i] - x[i - 1]) - (y[i] - y[i - 1]);
    acc += d * d;
  }
  return acc;
}

void outer_accum(double* g, const double* a, const double* b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double aj = a[j];
    double* row = g + j * n;
    for (std::size_t k = 0; k < n; ++k) row[k] += aj * b[k];
  }
}

}  // namespace dpclust::kernels::scalar
