#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twodist/enumerate.hpp"
#include "twodist/random.hpp"
#include "twodist/spherical.hpp"

namespace twodist {

struct SampleResult {
  int n = 0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double fraction = 0.0;
  double std_error = 0.0;  // sqrt(f (1 - f) / trials)
  std::uint64_t seed = 0;
  double edge_prob = 0.5;
};

/// Fraction of labelled G(n, p) graphs that are spherical. Trial t draws from
/// stream t of the seed, so the result does not depend on `jobs`.
inline SampleResult estimate_fraction(int n, std::int64_t trials, double p, std::uint64_t seed, int jobs = 1,
                                      double rel_tol = linalg::kDefaultRelTol) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (n < 3 || n > kMaxVertices) throw std::invalid_argument("sampling needs 3 <= n <= 64");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  std::vector<std::int64_t> hits(static_cast<std::size_t>(std::max(jobs, 1)), 0);
  detail::parallel_chunks(static_cast<std::size_t>(trials), jobs, [&](std::size_t begin, std::size_t end, std::size_t w) {
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      if (test_spherical(random_graph(n, p, rng), rel_tol).spherical) ++hits[w];
    }
  });
  SampleResult r;
  r.n = n;
  r.trials = trials;
  for (auto h : hits) r.hits += h;
  r.fraction = static_cast<double>(r.hits) / static_cast<double>(trials);
  r.std_error = std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(trials));
  r.seed = seed;
  r.edge_prob = p;
  return r;
}

inline std::string sample_csv(const std::vector<SampleResult>& results) {
  std::ostringstream out;
  out.precision(10);
  out << "n,trials,hits,fraction,stderr,seed\n";
  for (const auto& r : results) {
    out << r.n << ',' << r.trials << ',' << r.hits << ',' << r.fraction << ',' << r.std_error << ',' << r.seed << '\n';
  }
  return out.str();
}

inline void export_samples(const std::vector<SampleResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << sample_csv(results);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace twodist
