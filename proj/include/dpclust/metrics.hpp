#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpclust/bspline.hpp"
#include "dpclust/markov_op.hpp"
#include "dpclust/sde.hpp"

namespace dpclust {

enum class Metric { mo, sts, euc, dtw };

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<double> d;  // P x P, row-major, symmetric, zero diagonal
  std::string metric;

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return d[i * size() + j]; }
  double& at(std::size_t i, std::size_t j) { return d[i * size() + j]; }
};

/// Markov-operator distance: sum of squared entry differences between the
/// two operator estimates. As defined this is a squared quantity; pass
/// take_sqrt to get its root instead.
double d_mo(const MarkovOperatorMatrix& a, const MarkovOperatorMatrix& b,
            bool take_sqrt = false);

/// Short-time-series distance: L2 norm of the difference of per-step slopes.
/// Requires equal lengths and equal meshes.
double d_sts(const Path& x, const Path& y);

/// Plain Euclidean distance between equally long series.
double d_euc(const Path& x, const Path& y);

/// Dynamic time warping with local cost |x_i - y_j| and the symmetric step
/// pattern weighting diagonal moves 2 and axis moves 1 (the R dtw package
/// default), no window, un-normalized total cost. Lengths may differ.
double d_dtw(const Path& x, const Path& y);

/// Pairwise distances under one metric. A basis is required for Metric::mo
/// (each path's operator is estimated once and reused); pairs are computed
/// in parallel with a deterministic result.
DistanceMatrix distance_matrix(const std::vector<Path>& paths, Metric metric,
                               const OrthonormalBasis* basis = nullptr,
                               bool mo_sqrt = false);

/// Divides all entries by the maximum entry, which becomes exactly 1.
/// Throws on an all-zero matrix.
DistanceMatrix rescale01(const DistanceMatrix& m);

}  // namespace dpclust
