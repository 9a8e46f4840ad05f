#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "dpclust/bspline.hpp"
#include "dpclust/clustering.hpp"
#include "dpclust/metrics.hpp"
#include "dpclust/sde.hpp"
#include "dpclust/svg.hpp"

namespace dpclust {

struct PipelineConfig {
  std::vector<Metric> metrics = {Metric::mo, Metric::sts, Metric::euc,
                                 Metric::dtw};
  int basis_degree = 10;
  int basis_size = 20;
  double enlarge = 0.10;
  int k = 4;
  std::uint64_t seed = 42;
  std::size_t n_fine = 500000;
  double dt_fine = 1e-4;
  std::size_t resample_every = 1000;
  bool use_log_returns = false;
  bool mo_sqrt = false;

  void validate() const;
};

struct PipelineResult {
  std::vector<Path> paths;                  // as analyzed
  std::vector<DistanceMatrix> distances;    // one per metric, rescaled
  std::vector<Dendrogram> dendrograms;      // parallel to distances
  Metric primary = Metric::mo;              // drives cut + MDS
  ClusterAssignment assignment;
  std::optional<Embedding2D> embedding;     // present when >= 3 series
  std::vector<ClusterHull> hulls;           // clusters with >= 3 members
};

// Shared core: distances, dendrograms, cut and MDS on prepared paths.
PipelineResult run_paths(std::vector<Path> paths, const PipelineConfig& cfg);

PipelineResult run_synthetic(const PipelineConfig& cfg);

PipelineResult run_panel(const std::filesystem::path& panel_file,
                         const PipelineConfig& cfg, double delta = 1.0);

// Writes the full artifact bundle into dir (created if absent):
// paths.csv, per-metric distance_<m>.csv + dendrogram_<m>.{json,svg},
// clusters.csv and, when an embedding exists, mds.csv, hulls.json, mds.svg.
void emit_outputs(const PipelineResult& result,
                  const std::filesystem::path& dir);

}  // namespace dpclust
