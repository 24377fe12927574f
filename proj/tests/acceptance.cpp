/**
 * @file  acceptance.cpp
 * @brief End-to-end acceptance run. Prints one PASS/FAIL line per criterion
 *        and exits non-zero if any criterion fails.
 *
 *   acceptance [--workdir DIR] [--jobs N]
 *
 * The n = 9 census writes its graph6 input to DIR (default: current dir).
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twodist/twodist.hpp"

using namespace twodist;

namespace {

using Clock = std::chrono::steady_clock;
using Counts = std::map<int, std::int64_t>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string show(const Counts& c) {
  std::string s = "{";
  for (const auto& [d, v] : c) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(d) + ":" + std::to_string(v);
  }
  return s + "}";
}

struct Ledger {
  int failures = 0;

  void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

// Drops zero-count dimensions so {3:0, 4:23} compares equal to {4:23}.
Counts nonzero(const Counts& c) {
  Counts out;
  for (const auto& [d, v] : c) {
    if (v != 0) out[d] = v;
  }
  return out;
}

void census_exactness(Ledger& ledger, int jobs) {
  const std::map<int, Counts> table{
      {6, {{3, 6}, {4, 36}}},
      {7, {{4, 23}, {5, 175}}},
      {8, {{4, 7}, {5, 122}, {6, 1409}}},
  };
  bool ok = true;
  std::string detail;
  const auto t0 = Clock::now();
  for (const auto& [n, want] : table) {
    CensusOptions opt;
    opt.jobs = jobs;
    opt.certify = true;
    const auto row = run_census(n, BuiltinSource{}, opt);
    const bool match = nonzero(row.counts) == want;
    ok = ok && match;
    detail += "n=" + std::to_string(n) + " got " + show(row.counts) + (match ? "" : " want " + show(want)) + "; ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs <= 600.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs (limit 600s)", secs);
  ledger.report("[1] census n=6,7,8 builtin", ok, detail + buf);
}

void census_nine(Ledger& ledger, const std::filesystem::path& workdir, int jobs) {
  const Counts want{{4, 2}, {5, 65}, {6, 1037}, {7, 18007}};
  const auto t0 = Clock::now();
  const auto path = workdir / "graphs9.g6";
  {
    std::ofstream out(path);
    enumerate_nonisomorphic(9, [&](const Graph& g) { out << serialize_graph6(g) << '\n'; }, jobs);
  }
  CensusOptions opt;
  opt.jobs = jobs;
  opt.certify = true;
  const auto row = run_census(9, Graph6FileSource{path.string()}, opt);
  const double secs = seconds_since(t0);
  const bool match = nonzero(row.counts) == want;
  char buf[256];
  std::snprintf(buf, sizeof buf, " (%lld classes, %lld borderline re-decided exactly) %.1fs (limit 7200s)",
                static_cast<long long>(row.total_classes), static_cast<long long>(row.borderline), secs);
  ledger.report("[2] census n=9 from graph6 file", match && row.total_classes == 274668 && secs <= 7200.0,
                "got " + show(row.counts) + (match ? "" : " want " + show(want)) + buf);
  std::filesystem::remove(path);
}

void monte_carlo(Ledger& ledger, int jobs) {
  struct Target {
    int n;
    double fraction;
    double tol;
  };
  const Target targets[] = {{8, 0.08282, 0.005}, {9, 0.03541, 0.004}, {10, 0.0098, 0.002}};
  bool ok = true;
  std::string detail;
  std::vector<double> fractions;
  for (const auto& t : targets) {
    const auto t0 = Clock::now();
    const auto r = estimate_fraction(t.n, 100000, 0.5, 12345, jobs);
    const double secs = seconds_since(t0);
    const bool within = std::abs(r.fraction - t.fraction) <= t.tol && secs <= 300.0;
    ok = ok && within;
    fractions.push_back(r.fraction);
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%d %.5f+-%.5f (target %.5f+-%.3f, %.1fs); ", t.n, r.fraction, r.std_error,
                  t.fraction, t.tol, secs);
    detail += buf;
  }
  ok = ok && fractions[0] > fractions[1] && fractions[1] > fractions[2];
  ledger.report("[3] random-graph fractions", ok, detail + "seed 12345, 1e5 trials, p=0.5");
}

void triple_agreement(Ledger& ledger, int jobs) {
  std::int64_t checked = 0;
  std::int64_t disagreements = 0;
  auto compare = [&](const Graph& g) {
    const bool a = test_spherical(g).spherical;
    const bool b = interlacing_test(g);
    const bool c = condition_oracle(g).verdict;
    ++checked;
    if (a != b || a != c) {
      ++disagreements;
      std::printf("  disagreement on %s: test=%d interlacing=%d conditions=%d\n", serialize_graph6(g).c_str(), a, b, c);
    }
  };
  enumerate_nonisomorphic(7, compare, jobs);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    CounterRng rng(4444, t);
    compare(random_graph(8 + static_cast<int>(rng.below(5)), 0.5, rng));
  }
  std::int64_t exact_checked = 0;
  std::int64_t exact_disagreements = 0;
  for (int n = 3; n <= 7; ++n) {
    enumerate_nonisomorphic(n, [&](const Graph& g) {
      ++exact_checked;
      if (exact::exact_test_spherical(g) != test_spherical(g).spherical) {
        ++exact_disagreements;
        std::printf("  exact disagreement on %s\n", serialize_graph6(g).c_str());
      }
    }, jobs);
  }
  ledger.report("[4] oracle agreement", disagreements == 0 && exact_disagreements == 0,
                std::to_string(disagreements) + " of " + std::to_string(checked) + " float, " +
                    std::to_string(exact_disagreements) + " of " + std::to_string(exact_checked) + " exact disagree");
}

bool realization_ok(const Graph& g, std::string& why) {
  const auto r = test_spherical(g);
  const Embedding e = realize(g);
  double lo_short = 1e300, hi_short = 0, lo_long = 1e300, hi_long = 0;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const double d = point_distance(e.points[static_cast<std::size_t>(i)], e.points[static_cast<std::size_t>(j)]);
      if (g.has_edge(i, j)) {
        lo_long = std::min(lo_long, d);
        hi_long = std::max(hi_long, d);
      } else {
        lo_short = std::min(lo_short, d);
        hi_short = std::max(hi_short, d);
      }
    }
  }
  const bool has_short = hi_short > 0;
  const bool has_long = hi_long > 0;
  if ((has_short && (hi_short - lo_short) / lo_short >= 1e-6) || (has_long && (hi_long - lo_long) / lo_long >= 1e-6)) {
    why = "distance spread";
    return false;
  }
  // adjacency and the long distance coincide: every edge is longer than every non-edge
  if (has_short && has_long && !(lo_long > hi_short)) {
    why = "edges not at the long distance";
    return false;
  }
  const double ratio = has_short && has_long ? lo_long / lo_short : e.long_dist;
  if (std::abs(ratio - std::sqrt(1.0 / r.lambda2 + 1.0)) > 1e-6) {
    why = "ratio";
    return false;
  }
  if (!e.circumcenter) {
    why = "no circumcenter";
    return false;
  }
  for (const auto& p : e.points) {
    if (std::abs(point_distance(p, *e.circumcenter) - *e.circumradius) >= 1e-6 * *e.circumradius) {
      why = "circumradius residual";
      return false;
    }
  }
  if (e.dim != *r.min_dimension) {
    why = "dimension";
    return false;
  }
  return true;
}

void realization_suite(Ledger& ledger, int jobs) {
  std::int64_t realised = 0;
  std::int64_t failed = 0;
  for (int n = 3; n <= 7; ++n) {
    enumerate_nonisomorphic(n, [&](const Graph& g) {
      if (!test_spherical(g).spherical) return;
      ++realised;
      std::string why;
      bool ok = false;
      try {
        ok = realization_ok(g, why);
      } catch (const std::exception& ex) {
        why = ex.what();
      }
      if (!ok) {
        ++failed;
        std::printf("  realization failed on %s: %s\n", serialize_graph6(g).c_str(), why.c_str());
      }
    }, jobs);
  }
  const Embedding pentagon = realize(cycle_graph(5));
  const Embedding square = realize(Graph(4, {{0, 1}, {2, 3}}));
  const Embedding petersen = realize(petersen_graph());
  const bool named = pentagon.dim == 2 && std::abs(pentagon.long_dist - (1 + std::sqrt(5.0)) / 2) < 1e-6 &&
                     square.dim == 2 && std::abs(square.long_dist - std::sqrt(2.0)) < 1e-6 && petersen.dim == 4 &&
                     std::abs(petersen.long_dist - std::sqrt(2.0)) < 1e-6 && petersen.circumcenter.has_value() &&
                     verify_distances(petersen_graph(), petersen) && verify_distances(cycle_graph(5), pentagon);
  ledger.report("[5] realization suite", failed == 0 && named,
                std::to_string(realised - failed) + "/" + std::to_string(realised) +
                    " spherical classes with n<=7 realised; pentagon, square, Petersen " + (named ? "ok" : "WRONG"));
}

void property_suites(Ledger& ledger, int jobs) {
  // interlacing of A and PAP
  int interlace_bad = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CounterRng rng(6001, t);
    const Graph g = random_graph(3 + static_cast<int>(rng.below(13)), 0.5, rng);
    const auto spectra = graph_spectra(g);
    const auto& lam = spectra.adjacency.values;
    const auto& mu = spectra.compressed.values;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (lam[j] + 1e-8 < mu[j] || mu[j] + 1e-8 < lam[j + 1]) {
        ++interlace_bad;
        break;
      }
    }
  }
  // regular and not complete multipartite implies spherical
  int regular_seen = 0;
  int regular_bad = 0;
  for (int n = 3; n <= 8; ++n) {
    enumerate_nonisomorphic(n, [&](const Graph& g) {
      if (is_regular(g) && !is_complete_multipartite(g)) ++regular_seen;
      if (!check_regular_corollary(g)) ++regular_bad;
    }, jobs);
  }
  // relabelling invariance
  int relabel_bad = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CounterRng rng(6002, t);
    const int n = 3 + static_cast<int>(rng.below(10));
    const Graph g = random_graph(n, 0.5, rng);
    const auto a = test_spherical(g);
    const auto b = test_spherical(g.permuted(random_permutation(n, rng)));
    const bool same = a.spherical == b.spherical && a.min_dimension == b.min_dimension &&
                      (!a.spherical || std::abs(*a.ratio_k - *b.ratio_k) < 1e-9);
    relabel_bad += same ? 0 : 1;
  }
  // graph6 round trip
  int roundtrip_bad = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CounterRng rng(6003, t);
    const Graph g = random_graph(2 + static_cast<int>(rng.below(63)), rng.uniform(), rng);
    const std::string s = serialize_graph6(g);
    roundtrip_bad += parse_graph6(s) == g && serialize_graph6(parse_graph6(s)) == s ? 0 : 1;
  }
  ledger.report("[6] property suites", interlace_bad + regular_bad + relabel_bad + roundtrip_bad == 0,
                "interlacing " + std::to_string(interlace_bad) + "/1000 bad, regular implication " +
                    std::to_string(regular_bad) + " bad over " + std::to_string(regular_seen) +
                    " regular classes n<=8, relabelling " + std::to_string(relabel_bad) + "/1000 bad, graph6 " +
                    std::to_string(roundtrip_bad) + "/1000 bad");
}

void throughput(Ledger& ledger) {
  // labelled G(9, 1/2) draws; the decision cost does not depend on the source
  const int count = 50000;
  std::vector<Graph> graphs;
  graphs.reserve(count);
  for (int t = 0; t < count; ++t) {
    CounterRng rng(7001, static_cast<std::uint64_t>(t));
    graphs.push_back(random_graph(9, 0.5, rng));
  }
  const auto t0 = Clock::now();
  int hits = 0;
  for (const auto& g : graphs) hits += test_spherical(g).spherical ? 1 : 0;
  const double rate = count / seconds_since(t0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.0f graphs/s at n=9 single-threaded (floor 10000), %d spherical", rate, hits);
  ledger.report("[T] decision throughput", rate >= 1e4, buf);
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path workdir = std::filesystem::current_path();
  int jobs = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--workdir") == 0 && i + 1 < argc) {
      workdir = argv[++i];
    } else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      jobs = std::max(1, std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--workdir DIR] [--jobs N]\n", argv[0]);
      return 2;
    }
  }

  Ledger ledger;
  const std::vector<std::pair<const char*, std::function<void()>>> steps{
      {"[1] census n=6,7,8 builtin", [&] { census_exactness(ledger, jobs); }},
      {"[2] census n=9 from graph6 file", [&] { census_nine(ledger, workdir, jobs); }},
      {"[3] random-graph fractions", [&] { monte_carlo(ledger, jobs); }},
      {"[4] oracle agreement", [&] { triple_agreement(ledger, jobs); }},
      {"[5] realization suite", [&] { realization_suite(ledger, jobs); }},
      {"[6] property suites", [&] { property_suites(ledger, jobs); }},
      {"[T] decision throughput", [&] { throughput(ledger); }},
  };
  for (const auto& [id, step] : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      ledger.report(id, false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", ledger.failures);
  return ledger.failures == 0 ? 0 : 1;
}
