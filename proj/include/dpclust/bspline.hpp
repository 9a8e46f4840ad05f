#pragma once

#include <cstdint>
#include <vector>

#include "dpclust/sde.hpp"

namespace dpclust {

struct SupportInterval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

/// Smallest interval containing every observation of every path, enlarged by
/// the given fraction of its width (half on each side). A zero-width data
/// range is widened by 1.0 symmetrically.
SupportInterval detect_support(const std::vector<Path>& paths, double enlarge);

/// J B-spline functions of the given degree on an open-uniform (clamped)
/// knot vector over the support, orthonormalized in L2(support) by the
/// Cholesky factor of their Gram matrix. The mix matrix is lower triangular,
/// so function j is a combination of raw splines 0..j (index-ordered
/// Gram-Schmidt). Immutable once built; evaluation is safe concurrently.
class OrthonormalBasis {
 public:
  static OrthonormalBasis build(SupportInterval support, int degree,
                                int n_basis);

  int degree() const { return degree_; }
  int size() const { return n_basis_; }
  const SupportInterval& support() const { return support_; }
  const std::vector<double>& knots() const { return knots_; }
  /// Row-major J x J lower-triangular map raw -> orthonormal.
  const std::vector<double>& mix() const { return mix_; }
  /// Identity hash used to reject operator comparisons across bases.
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// Writes the J orthonormal values at x; zero outside [lo, hi]. The last
  /// knot span is closed, so x == hi evaluates to the left limit.
  void eval(double x, double* out) const;
  std::vector<double> eval(double x) const;

  /// Raw (pre-orthonormalization) B-spline values; used by tests.
  void eval_raw(double x, double* out) const;

 private:
  OrthonormalBasis() = default;
  int find_span(double x) const;  // -1 when x is outside the support
  void basis_funs(int span, double x, double* coeffs) const;

  int degree_ = 0;
  int n_basis_ = 0;
  SupportInterval support_;
  std::vector<double> knots_;
  std::vector<double> mix_;
  std::uint64_t fingerprint_ = 0;
};

/// Free-function forms of build/eval.
OrthonormalBasis build_basis(SupportInterval support, int degree, int n_basis);
std::vector<double> eval_basis(const OrthonormalBasis& basis, double x);

}  // namespace dpclust
