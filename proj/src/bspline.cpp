#include "dpclust/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dpclust/errors.hpp"
#include "dpclust/quadrature.hpp"

namespace dpclust {

namespace {

constexpr int kGramQuadNodes = 64;  // per knot span; exact for degree <= 10

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

// In-place lower Cholesky of a row-major symmetric matrix.
void cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (int k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0))
      throw BasisError("basis Gram matrix is not positive definite");
    const double ljj = std::sqrt(diag);
    a[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (int k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / ljj;
    }
    for (int k = j + 1; k < n; ++k) a[j * n + k] = 0.0;
  }
}

// Lower-triangular inverse, row-major.
std::vector<double> invert_lower(const std::vector<double>& l, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    inv[j * n + j] = 1.0 / l[j * n + j];
    for (int i = j + 1; i < n; ++i) {
      double acc = 0.0;
      for (int k = j; k < i; ++k) acc += l[i * n + k] * inv[k * n + j];
      inv[i * n + j] = -acc / l[i * n + i];
    }
  }
  return inv;
}

}  // namespace

SupportInterval detect_support(const std::vector<Path>& paths, double enlarge) {
  if (paths.empty()) throw InputError("detect_support: no paths given");
  if (enlarge < 0.0) throw InputError("detect_support: enlarge must be >= 0");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Path& p : paths) {
    for (double v : p.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) throw InputError("detect_support: paths contain no values");
  double w = hi - lo;
  if (w == 0.0) return SupportInterval{lo - 0.5, hi + 0.5};
  return SupportInterval{lo - enlarge * w / 2.0, hi + enlarge * w / 2.0};
}

OrthonormalBasis OrthonormalBasis::build(SupportInterval support, int degree,
                                         int n_basis) {
  if (!(support.width() > 0.0) || !std::isfinite(support.width()))
    throw BasisError("basis support must have positive finite width");
  if (degree < 0) throw BasisError("basis degree must be >= 0");
  if (degree > 60) throw BasisError("basis degree above 60 is not supported");
  if (n_basis <= degree)
    throw BasisError("basis size must exceed the degree");

  OrthonormalBasis basis;
  basis.degree_ = degree;
  basis.n_basis_ = n_basis;
  basis.support_ = support;

  // Open-uniform knots: degree+1 copies of each endpoint, equally spaced
  // interior knots.
  const int interior = n_basis - degree - 1;
  basis.knots_.reserve(static_cast<std::size_t>(n_basis) + degree + 1);
  for (int i = 0; i <= degree; ++i) basis.knots_.push_back(support.lo);
  for (int i = 1; i <= interior; ++i)
    basis.knots_.push_back(support.lo +
                           support.width() * i / (interior + 1));
  for (int i = 0; i <= degree; ++i) basis.knots_.push_back(support.hi);

  // Gram matrix of the raw splines by composite Gauss-Legendre per span.
  const int n = n_basis;
  std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
  const GaussLegendreRule& rule = gauss_legendre(kGramQuadNodes);
  std::vector<double> funs(degree + 1);
  for (int span = degree; span < n_basis; ++span) {
    const double a = basis.knots_[span], b = basis.knots_[span + 1];
    if (!(b > a)) continue;
    const double center = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < kGramQuadNodes; ++q) {
      const double x = center + half * rule.nodes[q];
      const double w = half * rule.weights[q];
      basis.basis_funs(span, x, funs.data());
      for (int j = 0; j <= degree; ++j) {
        const int gj = span - degree + j;
        for (int k = j; k <= degree; ++k) {
          const int gk = span - degree + k;
          gram[gj * n + gk] += w * funs[j] * funs[k];
        }
      }
    }
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < j; ++k) gram[j * n + k] = gram[k * n + j];

  cholesky(gram, n);
  basis.mix_ = invert_lower(gram, n);

  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(&degree, sizeof degree, h);
  h = fnv1a(&n_basis, sizeof n_basis, h);
  h = fnv1a(&support.lo, sizeof support.lo, h);
  h = fnv1a(&support.hi, sizeof support.hi, h);
  h = fnv1a(basis.knots_.data(), basis.knots_.size() * sizeof(double), h);
  basis.fingerprint_ = h;
  return basis;
}

int OrthonormalBasis::find_span(double x) const {
  if (x < support_.lo || x > support_.hi) return -1;
  if (x >= knots_[n_basis_]) return n_basis_ - 1;  // last span is closed
  int lo = degree_, hi = n_basis_;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (x < knots_[mid]) hi = mid;
    else lo = mid;
  }
  return lo;
}

void OrthonormalBasis::basis_funs(int span, double x, double* coeffs) const {
  // Cox-de Boor recurrence; coeffs receives the degree+1 values of the
  // splines with indices span-degree .. span.
  double left[64], right[64];
  coeffs[0] = 1.0;
  for (int j = 1; j <= degree_; ++j) {
    left[j] = x - knots_[span + 1 - j];
    right[j] = knots_[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = coeffs[r] / (right[r + 1] + left[j - r]);
      coeffs[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    coeffs[j] = saved;
  }
}

void OrthonormalBasis::eval_raw(double x, double* out) const {
  std::memset(out, 0, sizeof(double) * n_basis_);
  const int span = find_span(x);
  if (span < 0) return;
  double funs[64];
  basis_funs(span, x, funs);
  for (int j = 0; j <= degree_; ++j) out[span - degree_ + j] = funs[j];
}

void OrthonormalBasis::eval(double x, double* out) const {
  std::memset(out, 0, sizeof(double) * n_basis_);
  const int span = find_span(x);
  if (span < 0) return;
  double funs[64];
  basis_funs(span, x, funs);
  const int win_lo = span - degree_;
  for (int j = win_lo; j < n_basis_; ++j) {
    const double* row = mix_.data() + static_cast<std::size_t>(j) * n_basis_;
    const int kmax = std::min(j, span);
    double acc = 0.0;
    for (int k = win_lo; k <= kmax; ++k) acc += row[k] * funs[k - win_lo];
    out[j] = acc;
  }
}

std::vector<double> OrthonormalBasis::eval(double x) const {
  std::vector<double> out(n_basis_);
  eval(x, out.data());
  return out;
}

OrthonormalBasis build_basis(SupportInterval support, int degree, int n_basis) {
  return OrthonormalBasis::build(support, degree, n_basis);
}

std::vector<double> eval_basis(const OrthonormalBasis& basis, double x) {
  return basis.eval(x);
}

}  // namespace dpclust
