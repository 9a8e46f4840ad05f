#include "dpclust/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dpclust/errors.hpp"
#include "dpclust/kernels.hpp"
#include "dpclust/parallel.hpp"

namespace dpclust {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::mo: return "mo";
    case Metric::sts: return "sts";
    case Metric::euc: return "euc";
    case Metric::dtw: default: return "dtw";
  }
}

std::optional<Metric> parse_metric(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "mo") return Metric::mo;
  if (lower == "sts") return Metric::sts;
  if (lower == "euc") return Metric::euc;
  if (lower == "dtw") return Metric::dtw;
  return std::nullopt;
}

double d_mo(const MarkovOperatorMatrix& a, const MarkovOperatorMatrix& b,
            bool take_sqrt) {
  if (a.basis_id != b.basis_id || a.n_basis != b.n_basis)
    throw InputError("d_mo: operators were estimated on different bases");
  const std::size_t n = a.entries.size();
  const double sq = kernels::sum_sq_diff(a.entries.data(), b.entries.data(), n);
  return take_sqrt ? std::sqrt(sq) : sq;
}

double d_sts(const Path& x, const Path& y) {
  if (x.values.size() != y.values.size())
    throw InputError("d_sts: paths must have equal length");
  if (x.delta != y.delta)
    throw InputError("d_sts: paths must share the observation mesh");
  if (!(x.delta > 0.0))
    throw InputError("d_sts: observation mesh must be positive");
  const double sq = kernels::slope_sq_diff(x.values.data(), y.values.data(),
                                           x.values.size());
  return std::sqrt(sq) / x.delta;
}

double d_euc(const Path& x, const Path& y) {
  if (x.values.size() != y.values.size())
    throw InputError("d_euc: paths must have equal length");
  return std::sqrt(kernels::sum_sq_diff(x.values.data(), y.values.data(),
                                        x.values.size()));
}

double d_dtw(const Path& x, const Path& y) {
  const std::vector<double>& a = x.values;
  const std::vector<double>& b = y.values;
  if (a.empty() || b.empty()) throw InputError("d_dtw: empty path");

  // D(i,j) = min(D(i-1,j) + c, D(i,j-1) + c, D(i-1,j-1) + 2c), rolling rows.
  const std::size_t cols = b.size();
  std::vector<double> prev(cols), row(cols);
  prev[0] = std::abs(a[0] - b[0]);
  for (std::size_t j = 1; j < cols; ++j)
    prev[j] = prev[j - 1] + std::abs(a[0] - b[j]);
  for (std::size_t i = 1; i < a.size(); ++i) {
    row[0] = prev[0] + std::abs(a[i] - b[0]);
    for (std::size_t j = 1; j < cols; ++j) {
      const double c = std::abs(a[i] - b[j]);
      row[j] = std::min({prev[j] + c, row[j - 1] + c, prev[j - 1] + 2.0 * c});
    }
    prev.swap(row);
  }
  return prev[cols - 1];
}

DistanceMatrix distance_matrix(const std::vector<Path>& paths, Metric metric,
                               const OrthonormalBasis* basis, bool mo_sqrt) {
  if (paths.empty()) throw InputError("distance_matrix: no paths");
  const std::size_t p = paths.size();

  DistanceMatrix m;
  m.metric = metric_name(metric);
  m.labels.reserve(p);
  for (const Path& path : paths) m.labels.push_back(path.label);
  m.d.assign(p * p, 0.0);

  std::vector<MarkovOperatorMatrix> ops;
  if (metric == Metric::mo) {
    if (!basis) throw InputError("distance_matrix: MO metric needs a basis");
    ops.resize(p);
    parallel_for(0, p, [&](std::size_t i) {
      ops[i] = estimate_operator(paths[i], *basis);
    });
  }

  // Upper triangle, flattened so pairs can run in parallel.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);

  parallel_for(0, pairs.size(), [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    double v = 0.0;
    switch (metric) {
      case Metric::mo: v = d_mo(ops[i], ops[j], mo_sqrt); break;
      case Metric::sts: v = d_sts(paths[i], paths[j]); break;
      case Metric::euc: v = d_euc(paths[i], paths[j]); break;
      case Metric::dtw: v = d_dtw(paths[i], paths[j]); break;
    }
    m.at(i, j) = v;
    m.at(j, i) = v;
  });
  return m;
}

DistanceMatrix rescale01(const DistanceMatrix& m) {
  double max = 0.0;
  for (double v : m.d) max = std::max(max, v);
  if (!(max > 0.0))
    throw InputError("rescale01: all distances are zero");
  DistanceMatrix out = m;
  for (double& v : out.d) v /= max;
  return out;
}

}  // namespace dpclust
