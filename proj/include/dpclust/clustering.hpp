#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dpclust/metrics.hpp"

namespace dpclust {

/// One agglomeration step. Node ids follow the usual convention: leaves are
/// 0..P-1 in label order, internal nodes P..2P-2 in merge order.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
};

struct Dendrogram {
  std::vector<std::string> leaf_labels;
  std::vector<Merge> merges;  // exactly P-1, heights non-decreasing
};

/// Cluster index (1..k) per leaf, indices assigned by order of first leaf
/// appearance.
struct ClusterAssignment {
  std::vector<int> cluster_of;
  int k = 0;
};

struct Embedding2D {
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> eigenvalues{0.0, 0.0};
};

struct Ellipse {
  std::array<double, 2> center{0.0, 0.0};
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;  // radians, major axis vs +x
  bool degenerate = false;

  bool contains(double x, double y, double inflate = 1.0 + 1e-6) const;
};

/// Complete-linkage agglomerative clustering. Ties are broken by the
/// lexicographically smallest (min node id, max node id) pair, which makes
/// the tree deterministic.
Dendrogram hac_complete(const DistanceMatrix& m);

/// Undoes the last k-1 merges and reads off the connected components.
ClusterAssignment cut(const Dendrogram& d, int k);

/// Classical (Torgerson) multidimensional scaling to the plane: the top two
/// eigenpairs of the double-centered squared-distance matrix, negative
/// eigenvalues truncated at zero. Sign convention: the largest-magnitude
/// component of each axis is made positive.
Embedding2D classical_mds(const DistanceMatrix& m);

/// Minimum-area enclosing ellipse by Khachiyan's algorithm. Collinear and
/// coincident point sets fall back to a capsule-approximating ellipse whose
/// minor axis is 1e-6 of the major one.
Ellipse ellipsoid_hull(std::span<const std::array<double, 2>> points,
                       double tol = 1e-7);

}  // namespace dpclust
