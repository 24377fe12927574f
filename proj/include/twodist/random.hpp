#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "twodist/graph.hpp"

namespace twodist {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// SplitMix64 stream keyed by (seed, stream). Distinct streams are
/// statistically independent, so trial t of a batch can draw from stream t
/// no matter which worker runs it. Output is identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : state_(detail::mix64(seed ^ detail::mix64(stream * detail::kGolden + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    auto m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Labelled G(n, p): every pair is an edge independently with probability p.
inline Graph random_graph(int n, double p, CounterRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Graph g(n);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (rng.uniform() < p) g.add_edge(i, j);
    }
  }
  return g;
}

inline std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  return perm;
}

}  // namespace twodist
