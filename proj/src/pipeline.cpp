#include "dpclust/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"

#include "dpclust/csv.hpp"
#include "dpclust/errors.hpp"

namespace dpclust {

namespace {

void write_text(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << body;
  if (!out) throw InputError("write failed for " + file.string());
}

nlohmann::ordered_json dendrogram_json(const Dendrogram& d) {
  nlohmann::ordered_json j;
  j["labels"] = d.leaf_labels;
  j["merges"] = nlohmann::ordered_json::array();
  for (const Merge& m : d.merges)
    j["merges"].push_back(
        {{"left", m.left}, {"right", m.right}, {"height", m.height}});
  return j;
}

nlohmann::ordered_json hulls_json(const std::vector<ClusterHull>& hulls) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const ClusterHull& h : hulls)
    j.push_back({{"cluster", h.cluster},
                 {"center", {h.ellipse.center[0], h.ellipse.center[1]}},
                 {"semi_major", h.ellipse.semi_major},
                 {"semi_minor", h.ellipse.semi_minor},
                 {"angle", h.ellipse.angle},
                 {"degenerate", h.ellipse.degenerate}});
  return j;
}

}  // namespace

void PipelineConfig::validate() const {
  if (metrics.empty()) throw InputError("config: at least one metric required");
  std::set<Metric> seen(metrics.begin(), metrics.end());
  if (seen.size() != metrics.size())
    throw InputError("config: duplicate metric requested");
  if (basis_degree < 0) throw InputError("config: basis degree must be >= 0");
  if (basis_size <= basis_degree)
    throw InputError("config: basis size must exceed the degree");
  if (!(enlarge >= 0.0)) throw InputError("config: enlarge must be >= 0");
  if (k < 1) throw InputError("config: k must be >= 1");
  if (n_fine < resample_every || resample_every == 0)
    throw InputError("config: need at least one resampled step");
  if (!(dt_fine > 0.0)) throw InputError("config: dt must be positive");
}

PipelineResult run_paths(std::vector<Path> paths, const PipelineConfig& cfg) {
  cfg.validate();
  if (paths.size() < 2) throw InputError("need at least 2 series");
  if (cfg.k > static_cast<int>(paths.size()))
    throw InputError("config: k exceeds the number of series");

  PipelineResult result;
  result.paths = cfg.use_log_returns
                     ? log_returns(std::span<const Path>(paths))
                     : std::move(paths);

  const bool wants_mo =
      std::find(cfg.metrics.begin(), cfg.metrics.end(), Metric::mo) !=
      cfg.metrics.end();
  std::optional<OrthonormalBasis> basis;
  if (wants_mo)
    basis = OrthonormalBasis::build(detect_support(result.paths, cfg.enlarge),
                                    cfg.basis_degree, cfg.basis_size);

  for (Metric metric : cfg.metrics) {
    DistanceMatrix m = distance_matrix(
        result.paths, metric, basis ? &*basis : nullptr, cfg.mo_sqrt);
    // All-zero matrices (identical series) are kept as-is; rescale01
    // rejects them and there is nothing to scale.
    const bool all_zero =
        std::all_of(m.d.begin(), m.d.end(), [](double v) { return v == 0.0; });
    result.distances.push_back(all_zero ? std::move(m)
                                        : rescale01(std::move(m)));
    result.dendrograms.push_back(hac_complete(result.distances.back()));
  }

  result.primary = wants_mo ? Metric::mo : cfg.metrics.front();
  const std::size_t primary_idx = static_cast<std::size_t>(
      std::find(cfg.metrics.begin(), cfg.metrics.end(), result.primary) -
      cfg.metrics.begin());
  result.assignment = cut(result.dendrograms[primary_idx], cfg.k);

  if (result.paths.size() >= 3) {
    result.embedding = classical_mds(result.distances[primary_idx]);
    std::map<int, std::vector<std::array<double, 2>>> members;
    for (std::size_t i = 0; i < result.paths.size(); ++i)
      members[result.assignment.cluster_of[i]].push_back(
          result.embedding->coords[i]);
    for (const auto& [cluster, pts] : members)
      if (pts.size() >= 3)
        result.hulls.push_back({cluster, ellipsoid_hull(pts)});
  }
  return result;
}

PipelineResult run_synthetic(const PipelineConfig& cfg) {
  cfg.validate();
  return run_paths(
      synthetic_suite(cfg.seed, cfg.n_fine, cfg.dt_fine, cfg.resample_every),
      cfg);
}

PipelineResult run_panel(const std::filesystem::path& panel_file,
                         const PipelineConfig& cfg, double delta) {
  cfg.validate();
  return run_paths(ingest_csv(panel_file, delta), cfg);
}

void emit_outputs(const PipelineResult& result,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create directory " + dir.string() + ": " +
                     ec.message());

  write_paths_csv(dir / "paths.csv", result.paths);

  std::vector<std::string> labels;
  for (const Path& p : result.paths) labels.push_back(p.label);

  for (std::size_t i = 0; i < result.distances.size(); ++i) {
    const DistanceMatrix& m = result.distances[i];
    const std::string& name = m.metric;
    write_distance_csv(dir / ("distance_" + name + ".csv"), m);
    write_text(dir / ("dendrogram_" + name + ".json"),
               dendrogram_json(result.dendrograms[i]).dump(2) + "\n");
    write_text(dir / ("dendrogram_" + name + ".svg"),
               svg_dendrogram(result.dendrograms[i],
                              "Complete linkage, " + name + " distance"));
  }

  write_clusters_csv(dir / "clusters.csv", labels, result.assignment);

  if (result.embedding) {
    write_mds_csv(dir / "mds.csv", labels, *result.embedding,
                  result.assignment);
    write_text(dir / "hulls.json", hulls_json(result.hulls).dump(2) + "\n");
    write_text(dir / "mds.svg",
               svg_mds(labels, *result.embedding, result.assignment,
                       result.hulls,
                       "MDS map, " + std::string(metric_name(result.primary)) +
                           " distance"));
  }
}

}  // namespace dpclust
