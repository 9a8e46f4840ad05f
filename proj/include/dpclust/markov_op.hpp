#pragma once

#include <cstdint>
#include <vector>

#include "dpclust/bspline.hpp"
#include "dpclust/sde.hpp"

namespace dpclust {

/// Symmetrized transition-operator estimate of a path in an orthonormal
/// basis: entry (j, k) is the average of phi_j(X_{i-1}) phi_k(X_i) and its
/// transpose over the N observed transitions, divided by N. Symmetric
/// bitwise by construction.
struct MarkovOperatorMatrix {
  std::vector<double> entries;  // J x J, row-major
  int n_basis = 0;
  std::int64_t n_transitions = 0;
  std::uint64_t basis_id = 0;

  double at(int j, int k) const { return entries[j * n_basis + k]; }

  /// True when every path observation fell outside the basis support.
  bool all_zero() const {
    for (double v : entries)
      if (v != 0.0) return false;
    return true;
  }
};

MarkovOperatorMatrix estimate_operator(const Path& path,
                                       const OrthonormalBasis& basis);

}  // namespace dpclust
