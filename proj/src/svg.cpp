#include "dpclust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpclust/errors.hpp"

namespace dpclust {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* cluster_color(int cluster) {
  const int n = static_cast<int>(std::size(kPalette));
  return kPalette[((cluster - 1) % n + n) % n];
}

std::string num(double v) {
  // Fixed short decimals keep the files small and byte-stable.
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Leaf ids in dendrogram drawing order (left subtree before right).
std::vector<int> leaf_order(const Dendrogram& d) {
  const int p = static_cast<int>(d.leaf_labels.size());
  std::vector<int> order;
  order.reserve(p);
  std::vector<int> stack{p + static_cast<int>(d.merges.size()) - 1};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (node < p) {
      order.push_back(node);
    } else {
      const Merge& m = d.merges[node - p];
      stack.push_back(m.right);
      stack.push_back(m.left);
    }
  }
  return order;
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_dendrogram(const Dendrogram& d, std::string_view title) {
  const int p = static_cast<int>(d.leaf_labels.size());
  if (p < 2 || d.merges.size() != static_cast<std::size_t>(p - 1))
    throw InputError("svg_dendrogram: malformed dendrogram");

  const double leaf_gap = 56.0;
  const double margin = 48.0;
  const double plot_h = 320.0;
  const double width = 2.0 * margin + leaf_gap * (p - 1);
  const double height = plot_h + 2.0 * margin + 24.0;

  double hmax = 0.0;
  for (const Merge& m : d.merges) hmax = std::max(hmax, m.height);
  if (hmax <= 0.0) hmax = 1.0;
  const auto ycoord = [&](double h) {
    return margin + plot_h * (1.0 - h / hmax);
  };

  const std::vector<int> order = leaf_order(d);
  // x position and current top height per node id.
  std::vector<double> x(2 * p - 1, 0.0), y(2 * p - 1, ycoord(0.0));
  for (int slot = 0; slot < p; ++slot)
    x[order[slot]] = margin + leaf_gap * slot;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
      << ' ' << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(width / 2.0)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << xml_escape(title) << "</text>\n"
      << "<g stroke=\"#333333\" stroke-width=\"1.5\" fill=\"none\">\n";

  for (std::size_t s = 0; s < d.merges.size(); ++s) {
    const Merge& m = d.merges[s];
    const int node = p + static_cast<int>(s);
    const double top = ycoord(m.height);
    svg << "<path d=\"M " << num(x[m.left]) << ' ' << num(y[m.left]) << " V "
        << num(top) << " H " << num(x[m.right]) << " V " << num(y[m.right])
        << "\"/>\n";
    x[node] = 0.5 * (x[m.left] + x[m.right]);
    y[node] = top;
  }
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">\n";
  for (int slot = 0; slot < p; ++slot)
    svg << "<text x=\"" << num(margin + leaf_gap * slot) << "\" y=\""
        << num(margin + plot_h + 18.0) << "\">"
        << xml_escape(d.leaf_labels[order[slot]]) << "</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string svg_mds(std::span<const std::string> labels,
                    const Embedding2D& embedding,
                    const ClusterAssignment& assignment,
                    std::span<const ClusterHull> hulls,
                    std::string_view title) {
  const std::size_t p = labels.size();
  if (embedding.coords.size() != p || assignment.cluster_of.size() != p)
    throw InputError("svg_mds: size mismatch");

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  const auto extend = [&](double px, double py) {
    if (first) {
      xmin = xmax = px;
      ymin = ymax = py;
      first = false;
    } else {
      xmin = std::min(xmin, px);
      xmax = std::max(xmax, px);
      ymin = std::min(ymin, py);
      ymax = std::max(ymax, py);
    }
  };
  for (const auto& c : embedding.coords) extend(c[0], c[1]);
  for (const ClusterHull& h : hulls) {
    const double reach =
        std::max(h.ellipse.semi_major, h.ellipse.semi_minor);
    extend(h.ellipse.center[0] - reach, h.ellipse.center[1] - reach);
    extend(h.ellipse.center[0] + reach, h.ellipse.center[1] + reach);
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0.0)) span = 1.0;

  const double plot = 480.0, margin = 60.0;
  const double scale = plot / (1.1 * span);
  const double cx0 = 0.5 * (xmin + xmax), cy0 = 0.5 * (ymin + ymax);
  const double size = plot + 2.0 * margin;
  const auto sx = [&](double v) { return size / 2.0 + (v - cx0) * scale; };
  const auto sy = [&](double v) { return size / 2.0 - (v - cy0) * scale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size)
      << "\" height=\"" << num(size) << "\" viewBox=\"0 0 " << num(size) << ' '
      << num(size) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(size / 2.0)
      << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << xml_escape(title) << "</text>\n";

  for (const ClusterHull& h : hulls) {
    const Ellipse& e = h.ellipse;
    // The vertical flip of screen coordinates negates the rotation angle.
    const double deg = -e.angle * 180.0 / 3.14159265358979323846;
    svg << "<ellipse cx=\"" << num(sx(e.center[0])) << "\" cy=\""
        << num(sy(e.center[1])) << "\" rx=\"" << num(e.semi_major * scale)
        << "\" ry=\"" << num(std::max(e.semi_minor * scale, 0.75)) << "\""
        << " transform=\"rotate(" << num(deg) << ' ' << num(sx(e.center[0]))
        << ' ' << num(sy(e.center[1])) << ")\" fill=\""
        << cluster_color(h.cluster) << "\" fill-opacity=\"0.12\" stroke=\""
        << cluster_color(h.cluster) << "\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t i = 0; i < p; ++i) {
    const double px = sx(embedding.coords[i][0]);
    const double py = sy(embedding.coords[i][1]);
    const char* color = cluster_color(assignment.cluster_of[i]);
    svg << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py)
        << "\" r=\"4\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << num(px + 7.0) << "\" y=\"" << num(py - 7.0)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(labels[i]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace dpclust
