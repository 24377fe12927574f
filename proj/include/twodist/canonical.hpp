#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twodist/graph.hpp"

namespace twodist {

inline constexpr int kMaxCanonicalVertices = 12;

/// Upper triangle (graph6 column order) of the canonically relabelled graph,
/// packed MSB-first. Two graphs of equal order have equal forms iff they are
/// isomorphic. Byte order equals bitstring order, so `<=>` is lexicographic.
struct CanonicalForm {
  std::uint8_t n = 0;
  std::array<std::uint8_t, 9> bytes{};

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ f.n;
    for (auto b : f.bytes) h = (h ^ b) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

using TriangleBits = unsigned __int128;

/// Individualisation-refinement search. Every branch is label-invariant, so
/// the best leaf over the tree is an isomorphism invariant. Branches on a
/// vertex whose transposition with an already tried vertex of the same cell
/// is an automorphism are skipped (their subtrees are images of each other).
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {
    for (int u = 0; u < n_; ++u) {
      std::uint64_t t = 0;
      for (int v = 0; v < n_; ++v) {
        if (u == v) continue;
        const std::uint64_t nu = g.row(u) & ~(std::uint64_t{1} << v);
        const std::uint64_t nv = g.row(v) & ~(std::uint64_t{1} << u);
        if (nu == nv) t |= std::uint64_t{1} << v;
      }
      twins_[static_cast<std::size_t>(u)] = t;
    }
  }

  TriangleBits run(std::array<int, kMaxVertices>& best_order) {
    std::vector<std::uint64_t> cells{g_.vertex_mask()};
    search(cells);
    best_order = best_order_;
    return best_;
  }

 private:
  void refine(std::vector<std::uint64_t>& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
        const std::uint64_t splitter = cells[s];
        for (std::size_t c = 0; c < cells.size(); ++c) {
          const std::uint64_t cell = cells[c];
          if (std::popcount(cell) < 2) continue;
          std::array<std::uint64_t, kMaxVertices + 1> by_count{};
          int lo = kMaxVertices;
          int hi = 0;
          for (std::uint64_t rest = cell; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const int k = std::popcount(g_.row(v) & splitter);
            by_count[static_cast<std::size_t>(k)] |= std::uint64_t{1} << v;
            lo = k < lo ? k : lo;
            hi = k > hi ? k : hi;
          }
          if (lo == hi) continue;
          std::vector<std::uint64_t> parts;
          for (int k = lo; k <= hi; ++k) {
            if (by_count[static_cast<std::size_t>(k)] != 0) parts.push_back(by_count[static_cast<std::size_t>(k)]);
          }
          cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
          cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), parts.begin(), parts.end());
          changed = true;
          break;
        }
      }
    }
  }

  void search(std::vector<std::uint64_t> cells) {
    refine(cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (std::popcount(cells[c]) > 1) {
        target = c;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    const std::uint64_t cell = cells[target];
    std::uint64_t tried = 0;
    for (std::uint64_t rest = cell; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if ((twins_[static_cast<std::size_t>(v)] & tried) != 0) continue;
      tried |= std::uint64_t{1} << v;
      std::vector<std::uint64_t> next;
      next.reserve(cells.size() + 1);
      next.insert(next.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
      next.push_back(std::uint64_t{1} << v);
      next.push_back(cell & ~(std::uint64_t{1} << v));
      next.insert(next.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells.end());
      search(std::move(next));
    }
  }

  void leaf(const std::vector<std::uint64_t>& cells) {
    std::array<int, kMaxVertices> order{};
    for (std::size_t i = 0; i < cells.size(); ++i) order[i] = std::countr_zero(cells[i]);
    TriangleBits bits = 0;
    for (int j = 1; j < n_; ++j) {
      const std::uint64_t rj = g_.row(order[static_cast<std::size_t>(j)]);
      for (int i = 0; i < j; ++i) {
        bits = (bits << 1) | ((rj >> order[static_cast<std::size_t>(i)]) & 1U);
      }
    }
    if (!have_best_ || bits > best_) {
      best_ = bits;
      best_order_ = order;
      have_best_ = true;
    }
  }

  const Graph& g_;
  int n_;
  std::array<std::uint64_t, kMaxVertices> twins_{};
  TriangleBits best_ = 0;
  std::array<int, kMaxVertices> best_order_{};
  bool have_best_ = false;
};

inline int triangle_bits(int n) { return n * (n - 1) / 2; }

inline void check_canonical_order(int n) {
  if (n > kMaxCanonicalVertices) {
    throw std::invalid_argument("canonical form supports at most " + std::to_string(kMaxCanonicalVertices) +
                                " vertices, got " + std::to_string(n));
  }
}

}  // namespace detail

/// Canonical relabelling: result[v] is the new label of vertex v.
inline std::vector<int> canonical_labeling(const Graph& g) {
  detail::check_canonical_order(g.order());
  std::array<int, kMaxVertices> order{};
  detail::CanonicalSearch(g).run(order);
  std::vector<int> label(static_cast<std::size_t>(g.order()));
  for (int pos = 0; pos < g.order(); ++pos) label[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
  return label;
}

inline CanonicalForm canonical_form(const Graph& g) {
  detail::check_canonical_order(g.order());
  std::array<int, kMaxVertices> order{};
  const detail::TriangleBits bits = detail::CanonicalSearch(g).run(order);
  const int nbits = detail::triangle_bits(g.order());
  CanonicalForm f;
  f.n = static_cast<std::uint8_t>(g.order());
  for (int k = 0; k < nbits; ++k) {
    if ((bits >> (nbits - 1 - k)) & 1U) {
      f.bytes[static_cast<std::size_t>(k / 8)] |= static_cast<std::uint8_t>(0x80U >> (k % 8));
    }
  }
  return f;
}

/// The canonical representative encoded by a form.
inline Graph graph_from_form(const CanonicalForm& f) {
  Graph g(f.n);
  int k = 0;
  for (int j = 1; j < f.n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if ((f.bytes[static_cast<std::size_t>(k / 8)] >> (7 - k % 8)) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace twodist
