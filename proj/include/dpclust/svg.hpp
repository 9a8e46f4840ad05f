#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpclust/clustering.hpp"

namespace dpclust {

struct ClusterHull {
  int cluster = 0;
  Ellipse ellipse;
};

std::string xml_escape(std::string_view text);

// Standalone SVG documents; callers write them to disk verbatim.
std::string svg_dendrogram(const Dendrogram& d, std::string_view title);

std::string svg_mds(std::span<const std::string> labels,
                    const Embedding2D& embedding,
                    const ClusterAssignment& assignment,
                    std::span<const ClusterHull> hulls, std::string_view title);

}  // namespace dpclust
