#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twodist/canonical.hpp"
#include "twodist/graph.hpp"

namespace twodist {

inline constexpr int kMaxEnumerationOrder = 9;

namespace detail {

/// Runs body(begin, end, worker) over [0, count) split into `jobs` contiguous
/// chunks. Callers combine per-worker results in worker order, which keeps the
/// outcome independent of scheduling.
template <class Body>
void parallel_chunks(std::size_t count, int jobs, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count));
  if (workers <= 1) {
    body(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace detail

/// Canonical forms of all isomorphism classes on n vertices, sorted.
///
/// Classes on m+1 vertices are produced from those on m vertices by
/// appending a vertex with every possible neighbourhood; children are
/// deduplicated by canonical form. Every graph on m+1 vertices arises this
/// way (delete its last vertex), so the level is complete.
inline std::vector<CanonicalForm> nonisomorphic_forms(int n, int jobs = 1) {
  if (n < 2 || n > kMaxEnumerationOrder) {
    throw std::invalid_argument("enumeration supports 2 <= n <= " + std::to_string(kMaxEnumerationOrder) +
                                ", got " + std::to_string(n));
  }
  std::vector<CanonicalForm> level{canonical_form(Graph(2)), canonical_form(Graph(2, {{0, 1}}))};
  std::sort(level.begin(), level.end());
  for (int m = 2; m < n; ++m) {
    const std::uint64_t extensions = std::uint64_t{1} << m;
    std::vector<std::vector<CanonicalForm>> per_worker(static_cast<std::size_t>(std::max(jobs, 1)));
    detail::parallel_chunks(level.size(), jobs, [&](std::size_t begin, std::size_t end, std::size_t w) {
      auto& out = per_worker[w];
      for (std::size_t i = begin; i < end; ++i) {
        const Graph parent = graph_from_form(level[i]);
        for (std::uint64_t mask = 0; mask < extensions; ++mask) {
          out.push_back(canonical_form(parent.with_vertex(mask)));
        }
        // keep memory bounded on the large levels
        if (out.size() > (std::size_t{1} << 22)) {
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    });
    std::vector<CanonicalForm> next;
    for (auto& part : per_worker) next.insert(next.end(), part.begin(), part.end());
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return level;
}

/// Calls sink once per isomorphism class on n vertices, in canonical-form
/// order, with the canonical representative. Returns the class count.
inline std::size_t enumerate_nonisomorphic(int n, const std::function<void(const Graph&)>& sink, int jobs = 1) {
  const auto forms = nonisomorphic_forms(n, jobs);
  for (const auto& f : forms) sink(graph_from_form(f));
  return forms.size();
}

}  // namespace twodist
