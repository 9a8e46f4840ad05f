#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpclust/clustering.hpp"
#include "dpclust/metrics.hpp"
#include "dpclust/sde.hpp"

namespace dpclust {

// Raw rectangular panel: one time column, one column per series.
// Missing cells are stored as NaN.
struct PanelCSV {
  std::vector<std::string> time;               // first column, verbatim
  std::vector<std::string> labels;             // series labels from the header
  std::vector<std::vector<double>> columns;    // one vector per series
};

PanelCSV read_panel_csv(const std::filesystem::path& file);

// Fills missing cells: interior gaps by linear interpolation between the
// nearest observed neighbors, leading/trailing gaps by nearest-value
// extension. Each series needs at least 2 observed values.
std::vector<Path> ingest_panel(const PanelCSV& panel, double delta = 1.0);
std::vector<Path> ingest_csv(const std::filesystem::path& file,
                             double delta = 1.0);

// log(x_{i+1}) - log(x_i); requires strictly positive values.
std::vector<Path> log_returns(std::span<const Path> paths);

// Shortest decimal representation that round-trips bitwise.
std::string format_double(double v);
double parse_double(std::string_view text, const std::string& context);

void write_paths_csv(const std::filesystem::path& file,
                     std::span<const Path> paths);
std::vector<Path> read_paths_csv(const std::filesystem::path& file,
                                 double delta = 1.0);

void write_distance_csv(const std::filesystem::path& file,
                        const DistanceMatrix& m);
DistanceMatrix read_distance_csv(const std::filesystem::path& file);

void write_clusters_csv(const std::filesystem::path& file,
                        std::span<const std::string> labels,
                        const ClusterAssignment& assignment);

void write_mds_csv(const std::filesystem::path& file,
                   std::span<const std::string> labels,
                   const Embedding2D& embedding,
                   const ClusterAssignment& assignment);

}  // namespace dpclust
