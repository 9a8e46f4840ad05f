#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpclust/csv.hpp"
#include "dpclust/errors.hpp"
#include "dpclust/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dpclust;

namespace {

std::vector<Metric> resolve_metrics(const std::vector<std::string>& names) {
  if (names.empty())
    return {Metric::mo, Metric::sts, Metric::euc, Metric::dtw};
  std::vector<Metric> out;
  for (const std::string& name : names) {
    if (name == "all")
      return {Metric::mo, Metric::sts, Metric::euc, Metric::dtw};
    const std::optional<Metric> metric = parse_metric(name);
    if (!metric)
      throw InputError("unknown metric '" + name +
                       "' (expected mo, sts, euc, dtw or all)");
    out.push_back(*metric);
  }
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create directory " + dir.string() + ": " +
                     ec.message());
}

struct CommonFlags {
  std::vector<std::string> metric_names;
  PipelineConfig cfg;
  std::string out = "out";

  void attach(CLI::App* cmd, bool with_basis = true, bool with_k = true,
              bool with_metrics = true) {
    if (with_metrics)
      cmd->add_option("--metric", metric_names,
                      "Distance metric: mo, sts, euc, dtw or all "
                      "(repeatable or comma-separated)")
          ->delimiter(',');
    if (with_basis) {
      cmd->add_option("--basis-degree", cfg.basis_degree, "B-spline degree")
          ->capture_default_str();
      cmd->add_option("--basis-size", cfg.basis_size,
                      "Number of orthonormal basis functions")
          ->capture_default_str();
      cmd->add_option("--enlarge", cfg.enlarge,
                      "Relative enlargement of the detected support")
          ->capture_default_str();
      cmd->add_flag("--mo-sqrt", cfg.mo_sqrt,
                    "Report the square root of the operator distance");
    }
    if (with_k)
      cmd->add_option("--k", cfg.k, "Number of clusters for the cut")
          ->capture_default_str();
    cmd->add_option("--out", out, "Output directory")->capture_default_str();
  }

  void attach_sim(CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "Simulation seed")
        ->capture_default_str();
    cmd->add_option("--n-fine", cfg.n_fine, "Fine-grid steps per path")
        ->capture_default_str();
    cmd->add_option("--dt", cfg.dt_fine, "Fine-grid step size")
        ->capture_default_str();
    cmd->add_option("--resample", cfg.resample_every,
                    "Keep every k-th fine-grid point")
        ->capture_default_str();
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Clustering of discretely observed diffusion paths"};
  app.require_subcommand(1);

  // simulate: write the 10-path synthetic suite as a CSV.
  CommonFlags sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simulate the synthetic 10-path suite and write paths.csv");
  sim.attach(simulate, /*with_basis=*/false, /*with_k=*/false,
             /*with_metrics=*/false);
  sim.attach_sim(simulate);

  // distances: paths CSV in, one distance matrix per metric out.
  CommonFlags dst;
  std::string dst_input;
  double dst_delta = 1.0;
  bool dst_rescale = false;
  CLI::App* distances = app.add_subcommand(
      "distances", "Compute distance matrices from a paths CSV");
  distances->add_option("--input", dst_input, "Paths CSV file")->required();
  distances->add_option("--delta", dst_delta, "Sampling step between rows")
      ->capture_default_str();
  distances->add_flag("--rescale", dst_rescale,
                      "Rescale each matrix so the largest distance is 1");
  dst.attach(distances, /*with_basis=*/true, /*with_k=*/false);

  // cluster: distance CSV in, dendrogram + flat cut out.
  CommonFlags clu;
  std::string clu_input;
  CLI::App* cluster = app.add_subcommand(
      "cluster", "Complete-linkage clustering of a distance matrix");
  cluster->add_option("--input", clu_input, "Distance matrix CSV")->required();
  clu.attach(cluster, /*with_basis=*/false, /*with_k=*/true,
             /*with_metrics=*/false);

  // mds: distance CSV in, 2-D map + hulls out.
  CommonFlags map;
  std::string map_input;
  CLI::App* mds = app.add_subcommand(
      "mds", "2-D multidimensional scaling map of a distance matrix");
  mds->add_option("--input", map_input, "Distance matrix CSV")->required();
  map.attach(mds, /*with_basis=*/false, /*with_k=*/true,
             /*with_metrics=*/false);

  // run-synthetic / run-panel: the full pipelines.
  CommonFlags syn;
  CLI::App* run_syn = app.add_subcommand(
      "run-synthetic", "Simulate the synthetic suite and run the full pipeline");
  syn.attach(run_syn);
  syn.attach_sim(run_syn);

  CommonFlags pan;
  std::string pan_input;
  double pan_delta = 1.0;
  CLI::App* run_pan = app.add_subcommand(
      "run-panel", "Ingest a panel CSV and run the full pipeline");
  run_pan->add_option("--input", pan_input, "Panel CSV file")->required();
  run_pan->add_option("--delta", pan_delta, "Sampling step between rows")
      ->capture_default_str();
  run_pan->add_flag("--log-returns", pan.cfg.use_log_returns,
                    "Analyze log-returns instead of raw levels");
  pan.attach(run_pan);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    ensure_dir(sim.out);
    const std::vector<Path> paths = synthetic_suite(
        sim.cfg.seed, sim.cfg.n_fine, sim.cfg.dt_fine, sim.cfg.resample_every);
    write_paths_csv(fs::path(sim.out) / "paths.csv", paths);
    std::printf("wrote %s\n", (fs::path(sim.out) / "paths.csv").c_str());
    return 0;
  }

  if (distances->parsed()) {
    ensure_dir(dst.out);
    const std::vector<Path> paths = read_paths_csv(dst_input, dst_delta);
    const std::vector<Metric> metrics = resolve_metrics(dst.metric_names);
    std::optional<OrthonormalBasis> basis;
    for (Metric metric : metrics) {
      if (metric == Metric::mo && !basis)
        basis = OrthonormalBasis::build(detect_support(paths, dst.cfg.enlarge),
                                        dst.cfg.basis_degree,
                                        dst.cfg.basis_size);
      DistanceMatrix m = distance_matrix(paths, metric,
                                         basis ? &*basis : nullptr,
                                         dst.cfg.mo_sqrt);
      if (dst_rescale) m = rescale01(std::move(m));
      const fs::path file =
          fs::path(dst.out) / ("distance_" + m.metric + ".csv");
      write_distance_csv(file, m);
      std::printf("wrote %s\n", file.c_str());
    }
    return 0;
  }

  if (cluster->parsed()) {
    ensure_dir(clu.out);
    const DistanceMatrix m = read_distance_csv(clu_input);
    const Dendrogram dendro = hac_complete(m);
    const ClusterAssignment assignment = cut(dendro, clu.cfg.k);
    const std::string& name = m.metric;
    std::ofstream json(fs::path(clu.out) / ("dendrogram_" + name + ".json"),
                       std::ios::binary);
    // Reuse the pipeline writer for the full bundle shape elsewhere; here
    // only the dendrogram artifacts and the flat cut are requested.
    json << nlohmann::ordered_json(
                {{"labels", dendro.leaf_labels},
                 {"merges", [&] {
                    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                    for (const Merge& mg : dendro.merges)
                      arr.push_back({{"left", mg.left},
                                     {"right", mg.right},
                                     {"height", mg.height}});
                    return arr;
                  }()}})
                .dump(2)
         << '\n';
    std::ofstream svg(fs::path(clu.out) / ("dendrogram_" + name + ".svg"),
                      std::ios::binary);
    svg << svg_dendrogram(dendro, "Complete linkage, " + name + " distance");
    write_clusters_csv(fs::path(clu.out) / "clusters.csv", m.labels,
                       assignment);
    std::printf("wrote dendrogram_%s.{json,svg} and clusters.csv in %s\n",
                name.c_str(), clu.out.c_str());
    return 0;
  }

  if (mds->parsed()) {
    ensure_dir(map.out);
    const DistanceMatrix m = read_distance_csv(map_input);
    const Dendrogram dendro = hac_complete(m);
    const ClusterAssignment assignment = cut(dendro, map.cfg.k);
    const Embedding2D embedding = classical_mds(m);
    std::vector<ClusterHull> hulls;
    std::map<int, std::vector<std::array<double, 2>>> members;
    for (std::size_t i = 0; i < m.size(); ++i)
      members[assignment.cluster_of[i]].push_back(embedding.coords[i]);
    for (const auto& [cl, pts] : members)
      if (pts.size() >= 3) hulls.push_back({cl, ellipsoid_hull(pts)});
    write_mds_csv(fs::path(map.out) / "mds.csv", m.labels, embedding,
                  assignment);
    nlohmann::ordered_json harr = nlohmann::ordered_json::array();
    for (const ClusterHull& h : hulls)
      harr.push_back({{"cluster", h.cluster},
                      {"center", {h.ellipse.center[0], h.ellipse.center[1]}},
                      {"semi_major", h.ellipse.semi_major},
                      {"semi_minor", h.ellipse.semi_minor},
                      {"angle", h.ellipse.angle},
                      {"degenerate", h.ellipse.degenerate}});
    std::ofstream json(fs::path(map.out) / "hulls.json", std::ios::binary);
    json << harr.dump(2) << '\n';
    std::ofstream svg(fs::path(map.out) / "mds.svg", std::ios::binary);
    svg << svg_mds(m.labels, embedding, assignment, hulls,
                   "MDS map, " + m.metric + " distance");
    std::printf("wrote mds.csv, hulls.json and mds.svg in %s\n",
                map.out.c_str());
    return 0;
  }

  if (run_syn->parsed()) {
    syn.cfg.metrics = resolve_metrics(syn.metric_names);
    const PipelineResult result = run_synthetic(syn.cfg);
    emit_outputs(result, syn.out);
    std::printf("synthetic pipeline complete: %s\n", syn.out.c_str());
    return 0;
  }

  if (run_pan->parsed()) {
    pan.cfg.metrics = resolve_metrics(pan.metric_names);
    const PipelineResult result = run_panel(pan_input, pan.cfg, pan_delta);
    emit_outputs(result, pan.out);
    std::printf("panel pipeline complete: %s\n", pan.out.c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
