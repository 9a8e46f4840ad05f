#include "dpclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "dpclust/errors.hpp"

namespace dpclust {

namespace {

void validate_distance_matrix(const DistanceMatrix& m) {
  const std::size_t p = m.size();
  if (m.d.size() != p * p)
    throw InputError("distance matrix storage does not match its labels");
  for (std::size_t i = 0; i < p; ++i) {
    if (m.at(i, i) != 0.0)
      throw InputError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < p; ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw InputError("distance matrix entries must be finite and >= 0");
      if (v != m.at(j, i))
        throw InputError("distance matrix must be symmetric");
    }
  }
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major).
// Eigenvectors come back as columns of v.
void jacobi_eigen(std::vector<double>& a, std::vector<double>& v, int n,
                  double tol = 1e-12) {
  v.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double norm = 0.0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
    if (std::sqrt(off) <= tol * norm) return;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a[i * n + p], aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a[p * n + i], aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i * n + p], viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }
}

struct Sym2Eigen {
  double lambda_max, lambda_min;
  std::array<double, 2> vec_max, vec_min;
};

Sym2Eigen eigen2x2(double sxx, double sxy, double syy) {
  const double half_tr = 0.5 * (sxx + syy);
  const double disc =
      std::sqrt(std::max(0.0, 0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy));
  Sym2Eigen e;
  e.lambda_max = half_tr + disc;
  e.lambda_min = half_tr - disc;
  if (sxy != 0.0) {
    e.vec_max = {e.lambda_max - syy, sxy};
    e.vec_min = {e.lambda_min - syy, sxy};
  } else if (sxx >= syy) {
    e.vec_max = {1.0, 0.0};
    e.vec_min = {0.0, 1.0};
  } else {
    e.vec_max = {0.0, 1.0};
    e.vec_min = {1.0, 0.0};
  }
  for (auto* vec : {&e.vec_max, &e.vec_min}) {
    const double len = std::hypot((*vec)[0], (*vec)[1]);
    if (len > 0.0) {
      (*vec)[0] /= len;
      (*vec)[1] /= len;
    }
  }
  return e;
}

// Angle of a direction normalized into (-pi/2, pi/2].
double axis_angle(std::array<double, 2> dir) {
  if (dir[0] < 0.0 || (dir[0] == 0.0 && dir[1] < 0.0)) {
    dir[0] = -dir[0];
    dir[1] = -dir[1];
  }
  return std::atan2(dir[1], dir[0]);
}

}  // namespace

Dendrogram hac_complete(const DistanceMatrix& m) {
  validate_distance_matrix(m);
  const int p = static_cast<int>(m.size());
  if (p < 2) throw InputError("hac_complete: need at least 2 items");

  Dendrogram dendro;
  dendro.leaf_labels = m.labels;
  dendro.merges.reserve(p - 1);

  // Working distances indexed by node id (leaves + internal nodes).
  const int total = 2 * p - 1;
  std::vector<double> dist(static_cast<std::size_t>(total) * total, 0.0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) dist[i * total + j] = m.at(i, j);

  std::vector<int> active(p);
  std::iota(active.begin(), active.end(), 0);

  for (int step = 0; step < p - 1; ++step) {
    // Active ids are sorted, so scanning in order finds the
    // lexicographically smallest (min id, max id) pair among ties.
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double v = dist[active[i] * total + active[j]];
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }

    const int left = active[bi], right = active[bj];
    const int merged = p + step;
    dendro.merges.push_back({left, right, best});

    // Lance-Williams for complete linkage: d(new, k) = max(d(a,k), d(b,k)).
    active.erase(active.begin() + bj);
    active.erase(active.begin() + bi);
    for (int k : active) {
      const double v =
          std::max(dist[left * total + k], dist[right * total + k]);
      dist[merged * total + k] = v;
      dist[k * total + merged] = v;
    }
    active.push_back(merged);  // highest id so far, order stays sorted
  }
  return dendro;
}

ClusterAssignment cut(const Dendrogram& d, int k) {
  const int p = static_cast<int>(d.leaf_labels.size());
  if (k < 1 || k > p) throw InputError("cut: k must be in [1, P]");
  if (static_cast<int>(d.merges.size()) != p - 1)
    throw InputError("cut: dendrogram must hold exactly P-1 merges");

  // Apply the first P-k merges with union-find over node ids.
  std::vector<int> parent(2 * p - 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int s = 0; s < p - k; ++s) {
    const Merge& mg = d.merges[s];
    const int node = p + s;
    parent[find(mg.left)] = node;
    parent[find(mg.right)] = node;
  }

  ClusterAssignment out;
  out.k = k;
  out.cluster_of.assign(p, 0);
  std::vector<int> index_of_root(2 * p - 1, 0);
  int next = 0;
  for (int leaf = 0; leaf < p; ++leaf) {
    const int root = find(leaf);
    if (index_of_root[root] == 0) index_of_root[root] = ++next;
    out.cluster_of[leaf] = index_of_root[root];
  }
  return out;
}

Embedding2D classical_mds(const DistanceMatrix& m) {
  validate_distance_matrix(m);
  const int p = static_cast<int>(m.size());
  if (p < 3) throw InputError("classical_mds: need at least 3 items");

  // B = -1/2 J D^2 J via explicit double centering of the squared matrix.
  std::vector<double> b(static_cast<std::size_t>(p) * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) b[i * p + j] = m.at(i, j) * m.at(i, j);
  std::vector<double> row_mean(p, 0.0);
  double grand = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) row_mean[i] += b[i * p + j];
    row_mean[i] /= p;
    grand += row_mean[i];
  }
  grand /= p;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      b[i * p + j] = -0.5 * (b[i * p + j] - row_mean[i] - row_mean[j] + grand);

  std::vector<double> vecs;
  jacobi_eigen(b, vecs, p);

  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return b[lhs * p + lhs] > b[rhs * p + rhs];
  });

  Embedding2D emb;
  emb.coords.assign(p, {0.0, 0.0});
  if (b[order[1] * p + order[1]] <= 0.0)
    std::fprintf(stderr,
                 "warning: fewer than 2 positive eigenvalues in MDS; "
                 "embedding has zero column(s)\n");
  for (int axis = 0; axis < 2; ++axis) {
    const int col = order[axis];
    const double lambda = b[col * p + col];
    emb.eigenvalues[axis] = lambda;
    const double scale = std::sqrt(std::max(lambda, 0.0));
    // Deterministic sign: first largest-magnitude component positive.
    int arg = 0;
    for (int i = 1; i < p; ++i)
      if (std::abs(vecs[i * p + col]) > std::abs(vecs[arg * p + col])) arg = i;
    const double sign = vecs[arg * p + col] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < p; ++i)
      emb.coords[i][axis] = sign * scale * vecs[i * p + col];
  }
  return emb;
}

bool Ellipse::contains(double x, double y, double inflate) const {
  const double a = std::max(semi_major, 1e-300) * inflate;
  const double b = std::max(semi_minor, 1e-300) * inflate;
  const double ca = std::cos(angle), sa = std::sin(angle);
  const double dx = x - center[0], dy = y - center[1];
  const double u = (ca * dx + sa * dy) / a;
  const double v = (-sa * dx + ca * dy) / b;
  return u * u + v * v <= 1.0 + 1e-12;
}

Ellipse ellipsoid_hull(std::span<const std::array<double, 2>> points,
                       double tol) {
  const std::size_t n = points.size();
  if (n < 3) throw InputError("ellipsoid_hull: need at least 3 points");

  std::array<double, 2> mean{0.0, 0.0};
  for (const auto& pt : points) {
    mean[0] += pt[0];
    mean[1] += pt[1];
  }
  mean[0] /= static_cast<double>(n);
  mean[1] /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& pt : points) {
    const double dx = pt[0] - mean[0], dy = pt[1] - mean[1];
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const Sym2Eigen scatter = eigen2x2(sxx, sxy, syy);

  if (!(scatter.lambda_max > 0.0) ||
      scatter.lambda_min <= 1e-13 * scatter.lambda_max) {
    // Collinear or coincident points: capsule-approximating fallback.
    Ellipse e;
    e.degenerate = true;
    e.center = mean;
    const std::array<double, 2> dir =
        scatter.lambda_max > 0.0 ? scatter.vec_max : std::array<double, 2>{1.0, 0.0};
    double reach = 0.0;
    for (const auto& pt : points)
      reach = std::max(reach, std::abs((pt[0] - mean[0]) * dir[0] +
                                       (pt[1] - mean[1]) * dir[1]));
    e.semi_major = std::max(reach, 1e-9);
    e.semi_minor = 1e-6 * e.semi_major;
    e.angle = axis_angle(dir);
    return e;
  }

  // Khachiyan iteration on the lifted points q = (x, y, 1).
  std::vector<double> u(n, 1.0 / static_cast<double>(n));
  std::vector<double> mj(n);
  for (int iter = 0; iter < 100000; ++iter) {
    double x00 = 0, x01 = 0, x02 = 0, x11 = 0, x12 = 0, x22 = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = u[j], px = points[j][0], py = points[j][1];
      x00 += w * px * px;
      x01 += w * px * py;
      x02 += w * px;
      x11 += w * py * py;
      x12 += w * py;
      x22 += w;
    }
    const double det = x00 * (x11 * x22 - x12 * x12) -
                       x01 * (x01 * x22 - x12 * x02) +
                       x02 * (x01 * x12 - x11 * x02);
    if (det == 0.0 || !std::isfinite(det))
      throw InputError("ellipsoid_hull: singular moment matrix");
    const double i00 = (x11 * x22 - x12 * x12) / det;
    const double i01 = (x02 * x12 - x01 * x22) / det;
    const double i02 = (x01 * x12 - x02 * x11) / det;
    const double i11 = (x00 * x22 - x02 * x02) / det;
    const double i12 = (x01 * x02 - x00 * x12) / det;
    const double i22 = (x00 * x11 - x01 * x01) / det;

    double max_m = -1.0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double px = points[j][0], py = points[j][1];
      const double q = i00 * px * px + 2.0 * i01 * px * py + i11 * py * py +
                       2.0 * i02 * px + 2.0 * i12 * py + i22;
      mj[j] = q;
      if (q > max_m) {
        max_m = q;
        arg = j;
      }
    }
    if (max_m <= 3.0 * (1.0 + tol)) break;
    const double step = (max_m - 3.0) / (3.0 * (max_m - 1.0));
    for (double& w : u) w *= 1.0 - step;
    u[arg] += step;
  }

  Ellipse e;
  e.center = {0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    e.center[0] += u[j] * points[j][0];
    e.center[1] += u[j] * points[j][1];
  }
  double cxx = 0, cxy = 0, cyy = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = points[j][0] - e.center[0];
    const double dy = points[j][1] - e.center[1];
    cxx += u[j] * dx * dx;
    cxy += u[j] * dx * dy;
    cyy += u[j] * dy * dy;
  }
  // Shape matrix A = S^{-1} / 2 for {x : (x-c)^T A (x-c) <= 1}.
  const double det = cxx * cyy - cxy * cxy;
  if (det <= 0.0 || !std::isfinite(det))
    throw InputError("ellipsoid_hull: degenerate weighted scatter");
  const double a00 = cyy / det / 2.0;
  const double a01 = -cxy / det / 2.0;
  const double a11 = cxx / det / 2.0;

  const Sym2Eigen shape = eigen2x2(a00, a01, a11);
  e.semi_major = 1.0 / std::sqrt(shape.lambda_min);
  e.semi_minor = 1.0 / std::sqrt(shape.lambda_max);
  e.angle = axis_angle(shape.vec_min);

  // Tight finish: expand just enough that the farthest point sits on the
  // boundary, so containment is exact rather than within iteration slack.
  double worst = 0.0;
  for (const auto& pt : points) {
    const double dx = pt[0] - e.center[0], dy = pt[1] - e.center[1];
    worst = std::max(worst, a00 * dx * dx + 2.0 * a01 * dx * dy + a11 * dy * dy);
  }
  if (worst > 1.0) {
    const double grow = std::sqrt(worst);
    e.semi_major *= grow;
    e.semi_minor *= grow;
  }
  return e;
}

}  // namespace dpclust
