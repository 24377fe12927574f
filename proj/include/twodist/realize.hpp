#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twodist/graph.hpp"
#include "twodist/linalg.hpp"
#include "twodist/spherical.hpp"

namespace twodist {

class RealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates of a two-distance set. Non-adjacent pairs sit at distance
/// short_dist = 1, adjacent pairs at long_dist = k.
struct Embedding {
  int dim = 0;
  std::vector<std::vector<double>> points;
  double short_dist = 1.0;
  double long_dist = 0.0;
  std::optional<std::vector<double>> circumcenter;
  std::optional<double> circumradius;
};

/// b'_ij = m_1i^2 + m_1j^2 - m_ij^2 with m = 1 on non-edges and k on edges.
/// Row and column 0 vanish; half of this matrix is the Gram matrix of the
/// vectors p_i - p_0.
inline SymMatrix build_Bprime(const Graph& g, double k) {
  if (!(k > 1.0)) throw std::invalid_argument("distance ratio must exceed 1");
  const int n = g.order();
  const double k2 = k * k;
  auto sq = [&](int i, int j) { return i == j ? 0.0 : (g.has_edge(i, j) ? k2 : 1.0); };
  SymMatrix b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) b.set(i, j, sq(0, i) + sq(0, j) - sq(i, j));
  }
  return b;
}

namespace detail {

/// Least-squares centre of a point cloud that contains the origin as point 0:
/// solves 2 p_i . c = |p_i|^2 for i >= 1.
inline std::vector<double> least_squares_center(const std::vector<std::vector<double>>& pts, int dim) {
  SymMatrix normal(dim);
  std::vector<double> rhs(static_cast<std::size_t>(dim), 0.0);
  const std::size_t d = static_cast<std::size_t>(dim);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i) s += 4.0 * pts[i][a] * pts[i][b];
      normal.set(static_cast<int>(a), static_cast<int>(b), s);
    }
    for (std::size_t i = 1; i < pts.size(); ++i) rhs[a] += 2.0 * pts[i][a] * linalg::dot(pts[i], pts[i]);
  }
  // pseudo-inverse through the eigenbasis
  const auto es = linalg::eigendecompose(normal);
  std::vector<double> c(d, 0.0);
  const double cut = es.spectrum.tol;
  for (int e = 0; e < dim; ++e) {
    const double lam = es.spectrum.values[static_cast<std::size_t>(e)];
    if (lam <= cut) continue;
    double proj = 0.0;
    for (int a = 0; a < dim; ++a) proj += es.vectors(a, e) * rhs[static_cast<std::size_t>(a)];
    for (int a = 0; a < dim; ++a) c[static_cast<std::size_t>(a)] += es.vectors(a, e) * proj / lam;
  }
  return c;
}

}  // namespace detail

/// Point equidistant from all points, if one exists: present iff every
/// |p_i - c| is within 1e-6 r of the mean radius r.
inline std::optional<std::pair<std::vector<double>, double>> circumcenter(const Embedding& e) {
  if (e.points.empty()) return std::nullopt;
  const std::size_t d = static_cast<std::size_t>(e.dim);
  // translate so point 0 is the origin; embeddings from realize() already are
  std::vector<std::vector<double>> pts = e.points;
  const std::vector<double> origin = pts.front();
  for (auto& p : pts) {
    for (std::size_t a = 0; a < d; ++a) p[a] -= origin[a];
  }
  std::vector<double> c = e.dim > 0 ? detail::least_squares_center(pts, e.dim) : std::vector<double>{};
  double r = 0.0;
  std::vector<double> dist(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double s = 0.0;
    for (std::size_t a = 0; a < d; ++a) s += (pts[i][a] - c[a]) * (pts[i][a] - c[a]);
    dist[i] = std::sqrt(s);
    r += dist[i];
  }
  r /= static_cast<double>(pts.size());
  for (double di : dist) {
    if (std::abs(di - r) > 1e-6 * r) return std::nullopt;
  }
  for (std::size_t a = 0; a < d; ++a) c[a] += origin[a];
  return std::make_pair(std::move(c), r);
}

/// Coordinates for g with distance ratio k, via the Gram matrix B'/2 relative
/// to vertex 0. Axes follow descending Gram eigenvalues; each axis is signed
/// so its first clearly nonzero coordinate is positive.
inline Embedding realize_with_ratio(const Graph& g, double k) {
  const int n = g.order();
  SymMatrix gram = 0.5 * build_Bprime(g, k);
  const auto es = linalg::eigendecompose(gram);
  const double radius = es.spectrum.spectral_radius();
  const double cut = linalg::absolute_tol(linalg::kDefaultRelTol, radius);
  if (es.spectrum.values.back() < -cut) {
    throw RealizationError("Gram matrix has a negative eigenvalue; no Euclidean configuration with this ratio");
  }
  int dim = 0;
  for (double v : es.spectrum.values) {
    if (v > cut) ++dim;
  }

  Embedding e;
  e.dim = dim;
  e.long_dist = k;
  e.points.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  for (int a = 0; a < dim; ++a) {
    const double scale = std::sqrt(es.spectrum.values[static_cast<std::size_t>(a)]);
    double sign = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = es.vectors(i, a) * scale;
      if (sign == 0.0 && std::abs(x) > 1e-9) sign = x > 0 ? 1.0 : -1.0;
    }
    if (sign == 0.0) sign = 1.0;
    for (int i = 0; i < n; ++i) e.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = sign * es.vectors(i, a) * scale;
  }
  // row 0 of the Gram matrix is zero, so p_0 is the origin up to rounding
  for (auto& x : e.points.front()) x = 0.0;

  if (auto cc = circumcenter(e)) {
    e.circumcenter = std::move(cc->first);
    e.circumradius = cc->second;
  }
  return e;
}

inline double point_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) s += (p[a] - q[a]) * (p[a] - q[a]);
  return std::sqrt(s);
}

/// Checks that adjacent pairs sit at long_dist and the rest at short_dist,
/// both to within `rel` relative error.
inline bool verify_distances(const Graph& g, const Embedding& e, double rel = 1e-6) {
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const double want = g.has_edge(i, j) ? e.long_dist : e.short_dist;
      const double got = point_distance(e.points[static_cast<std::size_t>(i)], e.points[static_cast<std::size_t>(j)]);
      if (std::abs(got - want) > rel * want) return false;
    }
  }
  return true;
}

/// Explicit spherical two-distance set for a spherical graph.
inline Embedding realize(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  if (!is_representable(g)) throw RealizationError("complete multipartite graphs are not representable");
  const SphericalReport report = test_spherical(g, rel_tol);
  if (!report.spherical) {
    throw RealizationError("graph is not spherical; only spherical graphs have a known distance ratio");
  }
  Embedding e = realize_with_ratio(g, *report.ratio_k);
  if (!verify_distances(g, e)) throw RealizationError("realised configuration does not reproduce the two distances");
  return e;
}

}  // namespace twodist
