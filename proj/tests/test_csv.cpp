#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dpclust/csv.hpp"
#include "dpclust/errors.hpp"
#include "dpclust/rng.hpp"

using namespace dpclust;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dpclust_csv_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const std::string& name,
                    const std::string& body) {
  const fs::path file = dir / name;
  std::ofstream out(file, std::ios::binary);
  out << body;
  return file;
}

}  // namespace

TEST_CASE("format_double round-trips bitwise") {
  PhiloxRng rng(61);
  for (int i = 0; i < 2000; ++i) {
    double v = (rng.next_uniform() - 0.5) *
               std::pow(10.0, 60.0 * (rng.next_uniform() - 0.5));
    const std::string text = format_double(v);
    CHECK(parse_double(text, "t") == v);
  }
  CHECK(parse_double(format_double(0.0), "t") == 0.0);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("panel ingestion interpolates interior gaps") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "date,A,B\n"
                                   "2006-01-03,1.0,2.0\n"
                                   "2006-01-04,,2.0\n"
                                   "2006-01-05,3.0,4.0\n");
  const std::vector<Path> paths = ingest_csv(file);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].label == "A");
  CHECK(paths[0].values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(paths[1].values == std::vector<double>{2.0, 2.0, 4.0});
  CHECK(paths[0].delta == 1.0);
}

TEST_CASE("leading and trailing gaps extend the nearest value") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "t,A\n"
                                   "1,\n"
                                   "2,2.0\n"
                                   "3,4.0\n"
                                   "4,\n"
                                   "5,\n");
  const std::vector<Path> paths = ingest_csv(file);
  CHECK(paths[0].values == std::vector<double>{2.0, 2.0, 4.0, 4.0, 4.0});
}

TEST_CASE("a fully observed series passes through unchanged") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "t,A\n1,0.25\n2,0.5\n3,0.125\n");
  const std::vector<Path> paths = ingest_csv(file);
  CHECK(paths[0].values == std::vector<double>{0.25, 0.5, 0.125});
}

TEST_CASE("interpolation across a multi-step gap is linear") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "t,A\n1,1.0\n2,\n3,\n4,\n5,9.0\n");
  const std::vector<Path> paths = ingest_csv(file);
  CHECK(paths[0].values == std::vector<double>{1.0, 3.0, 5.0, 7.0, 9.0});
}

TEST_CASE("parse errors carry row, column and series context") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "t,GOOD,BAD\n1,1.0,2.0\n2,1.5,oops\n3,2,3\n");
  try {
    ingest_csv(file);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("column 3") != std::string::npos);
    CHECK(msg.find("BAD") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);
  }
}

TEST_CASE("an all-missing series is reported by name") {
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "panel.csv",
                                   "t,OK,EMPTY\n1,1.0,\n2,2.0,\n3,3.0,\n");
  try {
    ingest_csv(file);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("EMPTY") != std::string::npos);
  }
}

TEST_CASE("ragged rows are rejected") {
  TempDir tmp;
  const fs::path file =
      write_file(tmp.path, "panel.csv", "t,A,B\n1,1.0,2.0\n2,1.0\n3,1,2\n");
  CHECK_THROWS_AS(ingest_csv(file), InputError);
}

TEST_CASE("log returns difference the logs") {
  Path p;
  p.label = "A";
  p.delta = 1.0;
  p.values = {1.0, 2.0, 4.0, 2.0};
  const std::vector<Path> r = log_returns(std::vector<Path>{p});
  REQUIRE(r[0].values.size() == 3);
  CHECK(r[0].values[0] == doctest::Approx(std::log(2.0)));
  CHECK(r[0].values[1] == doctest::Approx(std::log(2.0)));
  CHECK(r[0].values[2] == doctest::Approx(-std::log(2.0)));

  p.values = {1.0, -2.0, 4.0};
  CHECK_THROWS_AS(log_returns(std::vector<Path>{p}), InputError);
}

TEST_CASE("paths CSV round-trips bitwise") {
  TempDir tmp;
  PhiloxRng rng(62);
  std::vector<Path> paths(3);
  for (int i = 0; i < 3; ++i) {
    paths[i].label = "S" + std::to_string(i);
    paths[i].delta = 0.1;
    for (int j = 0; j < 40; ++j)
      paths[i].values.push_back(rng.next_normal());
  }
  const fs::path file = tmp.path / "paths.csv";
  write_paths_csv(file, paths);
  const std::vector<Path> back = read_paths_csv(file, 0.1);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].label == paths[i].label);
    CHECK(back[i].values == paths[i].values);  // bitwise
  }
}

TEST_CASE("distance CSV round-trips bitwise") {
  TempDir tmp;
  PhiloxRng rng(63);
  DistanceMatrix m;
  m.metric = "dtw";
  for (int i = 0; i < 4; ++i) m.labels.push_back("P" + std::to_string(i));
  m.d.assign(16, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double v = rng.next_uniform() * 1e3;
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  const fs::path file = tmp.path / "distance_dtw.csv";
  write_distance_csv(file, m);
  const DistanceMatrix back = read_distance_csv(file);
  CHECK(back.metric == "dtw");
  CHECK(back.labels == m.labels);
  CHECK(back.d == m.d);  // bitwise
}

TEST_CASE("clusters and mds writers emit one row per series") {
  TempDir tmp;
  const std::vector<std::string> labels{"a", "b", "c"};
  ClusterAssignment assignment;
  assignment.k = 2;
  assignment.cluster_of = {1, 2, 1};
  write_clusters_csv(tmp.path / "clusters.csv", labels, assignment);

  Embedding2D emb;
  emb.coords = {{0.0, 1.0}, {0.5, -1.0}, {-0.5, 0.0}};
  emb.eigenvalues = {2.0, 1.0};
  write_mds_csv(tmp.path / "mds.csv", labels, emb, assignment);

  std::ifstream cl(tmp.path / "clusters.csv");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(cl, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "label,cluster");
  CHECK(lines[1] == "a,1");
  CHECK(lines[2] == "b,2");
  CHECK(lines[3] == "c,1");

  std::ifstream md(tmp.path / "mds.csv");
  lines.clear();
  while (std::getline(md, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "label,x,y,cluster");
  CHECK(lines[1] == "a,0,1,1");
}

TEST_CASE("missing files and malformed matrices are reported with the path") {
  CHECK_THROWS_AS(ingest_csv("/nonexistent/panel.csv"), InputError);
  TempDir tmp;
  const fs::path file = write_file(tmp.path, "bad.csv",
                                   "euc,a,b\na,0,1\n");  // missing row
  CHECK_THROWS_AS(read_distance_csv(file), InputError);
  const fs::path odd = write_file(tmp.path, "odd.csv",
                                  "wat,a,b\na,0,1\nb,1,0\n");
  CHECK_THROWS_AS(read_distance_csv(odd), InputError);
}
