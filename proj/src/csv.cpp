#include "dpclust/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dpclust/errors.hpp"

namespace dpclust {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::ofstream open_for_write(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InputError(context + ": cannot parse '" + std::string(text) +
                     "' as a number");
  return v;
}

PanelCSV read_panel_csv(const std::filesystem::path& file) {
  const std::vector<std::string> lines = read_lines(file);
  if (lines.size() < 3)
    throw InputError(file.string() + ": need a header and at least 2 rows");

  const auto header = split_fields(lines[0]);
  if (header.size() < 2)
    throw InputError(file.string() + ": header must list at least one series");

  PanelCSV panel;
  panel.labels.reserve(header.size() - 1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty())
      throw InputError(file.string() + ": empty series label in header column " +
                       std::to_string(c + 1));
    panel.labels.emplace_back(header[c]);
  }
  panel.columns.assign(panel.labels.size(), {});

  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != header.size())
      throw InputError(file.string() + ": row " + std::to_string(r + 1) +
                       " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(header.size()));
    panel.time.emplace_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::string_view cell = fields[c];
      if (cell.empty()) {
        panel.columns[c - 1].push_back(kMissing);
        continue;
      }
      const std::string ctx = file.string() + ": row " + std::to_string(r + 1) +
                              ", column " + std::to_string(c + 1) +
                              " (series '" + panel.labels[c - 1] + "')";
      panel.columns[c - 1].push_back(parse_double(cell, ctx));
    }
  }
  return panel;
}

std::vector<Path> ingest_panel(const PanelCSV& panel, double delta) {
  if (!(delta > 0.0)) throw InputError("ingest_panel: delta must be positive");
  std::vector<Path> out;
  out.reserve(panel.labels.size());
  for (std::size_t s = 0; s < panel.labels.size(); ++s) {
    const std::vector<double>& col = panel.columns[s];
    std::vector<std::size_t> observed;
    for (std::size_t i = 0; i < col.size(); ++i)
      if (!std::isnan(col[i])) observed.push_back(i);
    if (observed.size() < 2)
      throw InputError("series '" + panel.labels[s] +
                       "' has fewer than 2 observed values");

    Path path;
    path.label = panel.labels[s];
    path.delta = delta;
    path.values.assign(col.size(), 0.0);
    for (std::size_t i = 0; i <= observed.front(); ++i)
      path.values[i] = col[observed.front()];
    for (std::size_t i = observed.back(); i < col.size(); ++i)
      path.values[i] = col[observed.back()];
    for (std::size_t o = 0; o + 1 < observed.size(); ++o) {
      const std::size_t a = observed[o], b = observed[o + 1];
      path.values[a] = col[a];
      path.values[b] = col[b];
      for (std::size_t i = a + 1; i < b; ++i) {
        const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
        path.values[i] = col[a] + t * (col[b] - col[a]);
      }
    }
    out.push_back(std::move(path));
  }
  return out;
}

std::vector<Path> ingest_csv(const std::filesystem::path& file, double delta) {
  return ingest_panel(read_panel_csv(file), delta);
}

std::vector<Path> log_returns(std::span<const Path> paths) {
  std::vector<Path> out;
  out.reserve(paths.size());
  for (const Path& p : paths) {
    if (p.values.size() < 3)
      throw InputError("log_returns: series '" + p.label +
                       "' too short to difference");
    Path r;
    r.label = p.label;
    r.delta = p.delta;
    r.values.reserve(p.values.size() - 1);
    for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
      if (!(p.values[i] > 0.0) || !(p.values[i + 1] > 0.0))
        throw InputError("log_returns: series '" + p.label +
                         "' has non-positive values");
      r.values.push_back(std::log(p.values[i + 1]) - std::log(p.values[i]));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_paths_csv(const std::filesystem::path& file,
                     std::span<const Path> paths) {
  if (paths.empty()) throw InputError("write_paths_csv: no paths");
  const std::size_t n = paths.front().values.size();
  for (const Path& p : paths)
    if (p.values.size() != n)
      throw InputError("write_paths_csv: paths must share one length");

  std::ofstream out = open_for_write(file);
  out << "t";
  for (const Path& p : paths) out << ',' << p.label;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << i;
    for (const Path& p : paths) out << ',' << format_double(p.values[i]);
    out << '\n';
  }
  if (!out) throw InputError("write failed for " + file.string());
}

std::vector<Path> read_paths_csv(const std::filesystem::path& file,
                                 double delta) {
  const std::vector<std::string> lines = read_lines(file);
  if (lines.size() < 2) throw InputError(file.string() + ": no data rows");
  const auto header = split_fields(lines[0]);
  if (header.size() < 2)
    throw InputError(file.string() + ": header must list at least one path");

  std::vector<Path> paths(header.size() - 1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    paths[c - 1].label = std::string(header[c]);
    paths[c - 1].delta = delta;
    paths[c - 1].values.reserve(lines.size() - 1);
  }
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != header.size())
      throw InputError(file.string() + ": row " + std::to_string(r + 1) +
                       " width mismatch");
    for (std::size_t c = 1; c < fields.size(); ++c)
      paths[c - 1].values.push_back(parse_double(
          fields[c], file.string() + ": row " + std::to_string(r + 1) +
                         ", column " + std::to_string(c + 1)));
  }
  return paths;
}

void write_distance_csv(const std::filesystem::path& file,
                        const DistanceMatrix& m) {
  std::ofstream out = open_for_write(file);
  out << m.metric;
  for (const std::string& label : m.labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.labels[i];
    for (std::size_t j = 0; j < m.size(); ++j)
      out << ',' << format_double(m.at(i, j));
    out << '\n';
  }
  if (!out) throw InputError("write failed for " + file.string());
}

DistanceMatrix read_distance_csv(const std::filesystem::path& file) {
  const std::vector<std::string> lines = read_lines(file);
  if (lines.empty()) throw InputError(file.string() + ": empty file");
  const auto header = split_fields(lines[0]);
  if (header.size() < 2 || lines.size() != header.size())
    throw InputError(file.string() + ": not a labeled square matrix");

  DistanceMatrix m;
  m.metric = std::string(header[0]);
  if (!parse_metric(m.metric))
    throw InputError(file.string() + ": unknown metric '" + m.metric +
                     "' in the header corner");
  const std::size_t p = header.size() - 1;
  for (std::size_t c = 1; c < header.size(); ++c)
    m.labels.emplace_back(header[c]);
  m.d.assign(p * p, 0.0);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != header.size())
      throw InputError(file.string() + ": row " + std::to_string(r + 1) +
                       " width mismatch");
    if (fields[0] != m.labels[r - 1])
      throw InputError(file.string() + ": row label '" +
                       std::string(fields[0]) + "' does not match header");
    for (std::size_t c = 1; c < fields.size(); ++c)
      m.d[(r - 1) * p + (c - 1)] = parse_double(
          fields[c], file.string() + ": row " + std::to_string(r + 1) +
                         ", column " + std::to_string(c + 1));
  }
  return m;
}

void write_clusters_csv(const std::filesystem::path& file,
                        std::span<const std::string> labels,
                        const ClusterAssignment& assignment) {
  if (labels.size() != assignment.cluster_of.size())
    throw InputError("write_clusters_csv: label/assignment size mismatch");
  std::ofstream out = open_for_write(file);
  out << "label,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i] << ',' << assignment.cluster_of[i] << '\n';
  if (!out) throw InputError("write failed for " + file.string());
}

void write_mds_csv(const std::filesystem::path& file,
                   std::span<const std::string> labels,
                   const Embedding2D& embedding,
                   const ClusterAssignment& assignment) {
  if (labels.size() != embedding.coords.size() ||
      labels.size() != assignment.cluster_of.size())
    throw InputError("write_mds_csv: size mismatch");
  std::ofstream out = open_for_write(file);
  out << "label,x,y,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i] << ',' << format_double(embedding.coords[i][0]) << ','
        << format_double(embedding.coords[i][1]) << ','
        << assignment.cluster_of[i] << '\n';
  if (!out) throw InputError("write failed for " + file.string());
}

}  // namespace dpclust
