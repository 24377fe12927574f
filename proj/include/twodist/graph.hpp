#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twodist {

inline constexpr int kMaxVertices = 64;

/// Simple undirected graph on at most 64 vertices. Row i is a bitset whose
/// bit j is set iff {i, j} is an edge. The vertex count is fixed at
/// construction; symmetry and the zero diagonal are maintained by every
/// mutator.
class Graph {
 public:
  explicit Graph(int n) : n_(n) {
    if (n < 2 || n > kMaxVertices) {
      throw std::invalid_argument("graph order must be in [2, 64], got " + std::to_string(n));
    }
  }

  Graph(int n, std::initializer_list<std::pair<int, int>> edges) : Graph(n) {
    for (auto [i, j] : edges) add_edge(i, j);
  }

  int order() const noexcept { return n_; }

  std::uint64_t row(int i) const noexcept { return rows_[static_cast<std::size_t>(i)]; }

  /// Bitmask with the low n bits set.
  std::uint64_t vertex_mask() const noexcept {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  bool has_edge(int i, int j) const noexcept { return (row(i) >> j) & 1U; }

  void set_edge(int i, int j, bool present) {
    check_pair(i, j);
    auto& ri = rows_[static_cast<std::size_t>(i)];
    auto& rj = rows_[static_cast<std::size_t>(j)];
    if (present) {
      ri |= std::uint64_t{1} << j;
      rj |= std::uint64_t{1} << i;
    } else {
      ri &= ~(std::uint64_t{1} << j);
      rj &= ~(std::uint64_t{1} << i);
    }
  }

  void add_edge(int i, int j) { set_edge(i, j, true); }
  void remove_edge(int i, int j) { set_edge(i, j, false); }

  int degree(int i) const noexcept { return std::popcount(row(i)); }

  int edge_count() const noexcept {
    int twice = 0;
    for (int i = 0; i < n_; ++i) twice += degree(i);
    return twice / 2;
  }

  Graph complement() const {
    Graph c(n_);
    const auto mask = vertex_mask();
    for (int i = 0; i < n_; ++i) {
      c.rows_[static_cast<std::size_t>(i)] = ~rows_[static_cast<std::size_t>(i)] & mask & ~(std::uint64_t{1} << i);
    }
    return c;
  }

  /// Relabels vertex v as perm[v]. perm must be a permutation of 0..n-1.
  Graph permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != n_) {
      throw std::invalid_argument("permutation size does not match graph order");
    }
    Graph out(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (has_edge(i, j)) out.add_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
    }
    return out;
  }

  /// Graph on n+1 vertices: this graph plus a new last vertex joined to `neighbours`.
  Graph with_vertex(std::uint64_t neighbours) const {
    Graph out(n_ + 1);
    for (int i = 0; i < n_; ++i) out.rows_[static_cast<std::size_t>(i)] = rows_[static_cast<std::size_t>(i)];
    neighbours &= vertex_mask();
    for (int i = 0; i < n_; ++i) {
      if ((neighbours >> i) & 1U) out.add_edge(i, n_);
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i) {
      if (a.rows_[static_cast<std::size_t>(i)] != b.rows_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

 private:
  void check_pair(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("vertex index out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
  }

  int n_;
  std::array<std::uint64_t, kMaxVertices> rows_{};
};

/// True iff non-adjacency is an equivalence relation, i.e. every connected
/// component of the complement is a clique. Edgeless and complete graphs
/// qualify.
inline bool is_complete_multipartite(const Graph& g) {
  const Graph c = g.complement();
  std::uint64_t unseen = g.vertex_mask();
  while (unseen != 0) {
    const int root = std::countr_zero(unseen);
    std::uint64_t component = std::uint64_t{1} << root;
    std::uint64_t frontier = component;
    while (frontier != 0) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint64_t fresh = c.row(v) & ~component;
      component |= fresh;
      frontier |= fresh;
    }
    unseen &= ~component;
    for (std::uint64_t rest = component; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if ((c.row(v) | (std::uint64_t{1} << v)) != component) return false;
    }
  }
  return true;
}

inline bool is_regular(const Graph& g) {
  const int d0 = g.degree(0);
  for (int i = 1; i < g.order(); ++i) {
    if (g.degree(i) != d0) return false;
  }
  return true;
}

// Named families used by tests, demos and the CLI.

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph empty_graph(int n) { return Graph(n); }

/// Parts are given by their sizes; vertices are numbered part by part.
inline Graph complete_multipartite_graph(std::span<const int> parts) {
  int n = 0;
  std::vector<int> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int k = 0; k < parts[p]; ++k) part_of.push_back(static_cast<int>(p));
    n += parts[p];
  }
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (part_of[static_cast<std::size_t>(i)] != part_of[static_cast<std::size_t>(j)]) g.add_edge(i, j);
    }
  }
  return g;
}

inline Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer pentagon
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

/// Disjoint union, vertices of b follow those of a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (int i = 0; i < a.order(); ++i) {
    for (int j = i + 1; j < a.order(); ++j) {
      if (a.has_edge(i, j)) g.add_edge(i, j);
    }
  }
  const int off = a.order();
  for (int i = 0; i < b.order(); ++i) {
    for (int j = i + 1; j < b.order(); ++j) {
      if (b.has_edge(i, j)) g.add_edge(off + i, off + j);
    }
  }
  return g;
}

}  // namespace twodist
