#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twodist/graph.hpp"

namespace twodist::linalg {

/// Relative clustering tolerance; the absolute tolerance is this times
/// max(1, spectral radius).
inline constexpr double kDefaultRelTol = 1e-8;

/// Symmetric matrix storing the lower triangle only, so entry(i,j) and
/// entry(j,i) are the same memory.
class SymMatrix {
 public:
  explicit SymMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2, 0.0) {
    if (n < 1 || n > kMaxVertices) throw std::invalid_argument("matrix dimension must be in [1, 64]");
  }

  static SymMatrix identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  static SymMatrix ones(int n) {
    SymMatrix m(n);
    for (auto& x : m.data_) x = 1.0;
    return m;
  }

  static SymMatrix adjacency(const Graph& g) {
    SymMatrix m(g.order());
    for (int i = 0; i < g.order(); ++i) {
      for (int j = 0; j < i; ++j) {
        if (g.has_edge(i, j)) m.set(i, j, 1.0);
      }
    }
    return m;
  }

  int size() const noexcept { return n_; }

  double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }
  void set(int i, int j, double v) noexcept { data_[index(i, j)] = v; }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  double trace() const noexcept {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  SymMatrix operator+(const SymMatrix& o) const { return combine(o, 1.0); }
  SymMatrix operator-(const SymMatrix& o) const { return combine(o, -1.0); }

  friend SymMatrix operator*(double s, SymMatrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t index(int i, int j) noexcept {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2 + static_cast<std::size_t>(j);
  }

  SymMatrix combine(const SymMatrix& o, double sign) const {
    if (o.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
    SymMatrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += sign * o.data_[k];
    return r;
  }

  int n_;
  std::vector<double> data_;
};

/// Dense row-major matrix, used for eigenbases and coordinates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  double& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }
  double operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }

  std::vector<double> column(int j) const {
    std::vector<double> c(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
    return c;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct EigenGroup {
  double value = 0.0;  // mean of the members
  int multiplicity = 0;
};

/// Eigenvalues sorted descending, clustered into groups whose span is at
/// most `tol`.
struct Spectrum {
  std::vector<double> values;
  std::vector<EigenGroup> groups;
  double tol = 0.0;

  double spectral_radius() const noexcept {
    double r = 0.0;
    for (double v : values) r = std::max(r, std::abs(v));
    return r;
  }
};

inline double absolute_tol(double rel_tol, double radius) noexcept { return rel_tol * std::max(1.0, radius); }

/// Sorts values descending and clusters them. A new group starts whenever a
/// value lies more than `tol` below the first member of the current group.
inline Spectrum make_spectrum(std::vector<double> values, std::optional<double> tol = std::nullopt,
                              double rel_tol = kDefaultRelTol) {
  std::sort(values.begin(), values.end(), std::greater<>());
  Spectrum s;
  s.values = std::move(values);
  s.tol = tol.value_or(absolute_tol(rel_tol, s.spectral_radius()));
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.values.size(); ++i) {
    if (i == s.values.size() || s.values[start] - s.values[i] > s.tol) {
      if (i > start) {
        double sum = 0.0;
        for (std::size_t k = start; k < i; ++k) sum += s.values[k];
        s.groups.push_back({sum / static_cast<double>(i - start), static_cast<int>(i - start)});
      }
      start = i;
    }
  }
  return s;
}

namespace detail {

/// Cyclic Jacobi on a full n*n row-major copy. Sweeps visit (p,q) in fixed
/// row order; the first three sweeps skip rotations below a threshold. If
/// `vectors` is non-null it accumulates the eigenbasis (columns).
inline std::vector<double> jacobi(std::vector<double> a, int n, std::vector<double>* vectors) {
  auto at = [n](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  if (vectors) {
    vectors->assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) at(*vectors, i, i) = 1.0;
  }
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<double> b(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] = at(a, i, i);

  for (int sweep = 1; sweep <= 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::abs(at(a, p, q));
    }
    if (off == 0.0) break;
    const double threshold = sweep < 4 ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        const double g = 100.0 * std::abs(apq);
        const double dp = d[static_cast<std::size_t>(p)];
        const double dq = d[static_cast<std::size_t>(q)];
        if (sweep > 4 && std::abs(dp) + g == std::abs(dp) && std::abs(dq) + g == std::abs(dq)) {
          at(a, p, q) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;
        const double h = dq - dp;
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double shift = t * apq;
        z[static_cast<std::size_t>(p)] -= shift;
        z[static_cast<std::size_t>(q)] += shift;
        d[static_cast<std::size_t>(p)] -= shift;
        d[static_cast<std::size_t>(q)] += shift;
        at(a, p, q) = 0.0;
        auto rotate = [&](int i, int j, int k, int l) {
          const double gg = at(a, i, j);
          const double hh = at(a, k, l);
          at(a, i, j) = gg - s * (hh + gg * tau);
          at(a, k, l) = hh + s * (gg - hh * tau);
        };
        for (int j = 0; j < p; ++j) rotate(j, p, j, q);
        for (int j = p + 1; j < q; ++j) rotate(p, j, j, q);
        for (int j = q + 1; j < n; ++j) rotate(p, j, q, j);
        if (vectors) {
          for (int j = 0; j < n; ++j) {
            const double gg = at(*vectors, j, p);
            const double hh = at(*vectors, j, q);
            at(*vectors, j, p) = gg - s * (hh + gg * tau);
            at(*vectors, j, q) = hh + s * (gg - hh * tau);
          }
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      b[static_cast<std::size_t>(p)] += z[static_cast<std::size_t>(p)];
      d[static_cast<std::size_t>(p)] = b[static_cast<std::size_t>(p)];
      z[static_cast<std::size_t>(p)] = 0.0;
    }
  }
  return d;
}

inline std::vector<double> to_dense(const SymMatrix& m) {
  const int n = m.size();
  std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = m(i, j);
  }
  return a;
}

}  // namespace detail

struct Eigensystem {
  Spectrum spectrum;
  Matrix vectors;  // column j pairs with spectrum.values[j]
};

/// Eigenvalues only; cheaper than eigendecompose.
inline Spectrum eigenvalues(const SymMatrix& m, double rel_tol = kDefaultRelTol) {
  return make_spectrum(detail::jacobi(detail::to_dense(m), m.size(), nullptr), std::nullopt, rel_tol);
}

inline Eigensystem eigendecompose(const SymMatrix& m, double rel_tol = kDefaultRelTol) {
  const int n = m.size();
  std::vector<double> v;
  std::vector<double> d = detail::jacobi(detail::to_dense(m), n, &v);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  // stable: ties keep Jacobi's column order, so output is reproducible
  std::stable_sort(order.begin(), order.end(),
                   [&d](int x, int y) { return d[static_cast<std::size_t>(x)] > d[static_cast<std::size_t>(y)]; });
  Eigensystem es;
  es.vectors = Matrix(n, n);
  std::vector<double> sorted(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const int src = order[static_cast<std::size_t>(c)];
    sorted[static_cast<std::size_t>(c)] = d[static_cast<std::size_t>(src)];
    for (int r = 0; r < n; ++r) es.vectors(r, c) = v[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(src)];
  }
  es.spectrum = make_spectrum(std::move(sorted), std::nullopt, rel_tol);
  return es;
}

/// P*a*P with P = I - J/n, the compression onto the complement of the
/// all-ones vector.
inline SymMatrix project_center(const SymMatrix& a) {
  const int n = a.size();
  std::vector<double> row_mean(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row_mean[static_cast<std::size_t>(i)] += a(i, j);
    total += row_mean[static_cast<std::size_t>(i)];
    row_mean[static_cast<std::size_t>(i)] /= n;
  }
  total /= static_cast<double>(n) * n;
  SymMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      out.set(i, j, a(i, j) - row_mean[static_cast<std::size_t>(i)] - row_mean[static_cast<std::size_t>(j)] + total);
    }
  }
  return out;
}

/// Multiplicity of the group that has a member within tol of target; 0 if none.
inline int group_multiplicity(const Spectrum& s, double target) {
  std::size_t idx = 0;
  int best = 0;
  double best_dist = s.tol;
  for (const auto& grp : s.groups) {
    for (int k = 0; k < grp.multiplicity; ++k, ++idx) {
      const double dist = std::abs(s.values[idx] - target);
      if (dist <= best_dist) {
        best_dist = dist;
        best = grp.multiplicity;
      }
    }
  }
  return best;
}

inline bool psd_on_complement(const SymMatrix& m, double rel_tol = kDefaultRelTol) {
  const Spectrum s = eigenvalues(project_center(m), rel_tol);
  return s.values.back() >= -s.tol;
}

inline int rank_with_tol(const SymMatrix& m, double rel_tol = kDefaultRelTol) {
  const Spectrum s = eigenvalues(m, rel_tol);
  int r = 0;
  for (double v : s.values) {
    if (std::abs(v) > s.tol) ++r;
  }
  return r;
}

/// Matrix-vector product.
inline std::vector<double> multiply(const SymMatrix& m, std::span<const double> x) {
  const int n = m.size();
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += m(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

inline double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace twodist::linalg
