#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "twodist/graph.hpp"
#include "twodist/linalg.hpp"
#include "twodist/random.hpp"

using namespace twodist;
using linalg::SymMatrix;

namespace {

SymMatrix random_symmetric(int n, CounterRng& rng) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) m.set(i, j, 2.0 * rng.uniform() - 1.0);
  }
  return m;
}

}  // namespace

TEST(Eigen, IdentityHasUnitSpectrum) {
  const auto s = linalg::eigenvalues(SymMatrix::identity(3));
  ASSERT_EQ(s.groups.size(), 1U);
  EXPECT_EQ(s.groups[0].multiplicity, 3);
  for (double v : s.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Eigen, CycleSpectrumIsTwoCosines) {
  for (int n = 3; n <= 12; ++n) {
    std::vector<double> want;
    for (int j = 0; j < n; ++j) want.push_back(2.0 * std::cos(2.0 * std::numbers::pi * j / n));
    std::sort(want.begin(), want.end(), std::greater<>());
    const auto got = linalg::eigenvalues(SymMatrix::adjacency(cycle_graph(n))).values;
    for (int j = 0; j < n; ++j) EXPECT_NEAR(got[static_cast<std::size_t>(j)], want[static_cast<std::size_t>(j)], 1e-12);
  }
  const auto c5 = linalg::eigenvalues(SymMatrix::adjacency(cycle_graph(5)));
  EXPECT_EQ(linalg::group_multiplicity(c5, 2.0 * std::cos(2.0 * std::numbers::pi / 5)), 2);
  EXPECT_EQ(linalg::group_multiplicity(c5, 2.0), 1);
  EXPECT_EQ(linalg::group_multiplicity(c5, 0.2), 0);
}

TEST(Eigen, PetersenSpectrum) {
  const auto s = linalg::eigenvalues(SymMatrix::adjacency(petersen_graph()));
  ASSERT_EQ(s.groups.size(), 3U);
  EXPECT_NEAR(s.groups[0].value, 3.0, 1e-12);
  EXPECT_EQ(s.groups[0].multiplicity, 1);
  EXPECT_NEAR(s.groups[1].value, 1.0, 1e-12);
  EXPECT_EQ(s.groups[1].multiplicity, 5);
  EXPECT_NEAR(s.groups[2].value, -2.0, 1e-12);
  EXPECT_EQ(s.groups[2].multiplicity, 4);
  EXPECT_EQ(linalg::group_multiplicity(s, 1.0), 5);
}

TEST(Eigen, ReconstructionAndOrthonormality) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterRng rng(8, t);
    const int n = 1 + static_cast<int>(rng.below(20));
    const SymMatrix m = random_symmetric(n, rng);
    const auto es = linalg::eigendecompose(m);
    const double scale = std::max(1.0, m.max_abs());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double r = 0.0;
        double dotv = 0.0;
        for (int k = 0; k < n; ++k) {
          r += es.vectors(i, k) * es.spectrum.values[static_cast<std::size_t>(k)] * es.vectors(j, k);
          dotv += es.vectors(k, i) * es.vectors(k, j);
        }
        ASSERT_NEAR(r, m(i, j), 1e-10 * scale);
        ASSERT_NEAR(dotv, i == j ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}

TEST(Eigen, SumMatchesTrace) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    CounterRng rng(9, t);
    const int n = 2 + static_cast<int>(rng.below(30));
    const SymMatrix m = t % 2 ? random_symmetric(n, rng) : SymMatrix::adjacency(random_graph(n, 0.5, rng));
    const auto s = linalg::eigenvalues(m);
    double sum = 0.0;
    for (double v : s.values) sum += v;
    EXPECT_NEAR(sum, m.trace(), 1e-9 * n * std::max(1.0, m.max_abs()));
    int total = 0;
    for (const auto& g : s.groups) total += g.multiplicity;
    EXPECT_EQ(total, n);
    EXPECT_TRUE(std::is_sorted(s.values.rbegin(), s.values.rend()));
  }
}

TEST(Eigen, Deterministic) {
  CounterRng rng(10);
  const SymMatrix m = random_symmetric(15, rng);
  const auto a = linalg::eigendecompose(m);
  const auto b = linalg::eigendecompose(m);
  EXPECT_EQ(a.spectrum.values, b.spectrum.values);
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) EXPECT_EQ(a.vectors(i, j), b.vectors(i, j));
  }
}

TEST(Spectrum, GroupsRespectTolerance) {
  const auto s = linalg::make_spectrum({3.0, 1.0 + 5e-9, 1.0, 1.0 - 5e-9, -2.0}, 1e-8);
  ASSERT_EQ(s.groups.size(), 3U);
  EXPECT_EQ(s.groups[1].multiplicity, 3);
  const auto split = linalg::make_spectrum({1.0, 1.0 - 2e-8}, 1e-8);
  EXPECT_EQ(split.groups.size(), 2U);
}

TEST(ProjectCenter, Examples) {
  const auto pj = linalg::project_center(SymMatrix::ones(5));
  EXPECT_LE(pj.max_abs(), 1e-14);
  const auto pi = linalg::project_center(SymMatrix::identity(4));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(pi(i, j), (i == j ? 1.0 : 0.0) - 0.25, 1e-15);
  }
  const Graph two_k2(4, {{0, 1}, {2, 3}});
  const auto s = linalg::eigenvalues(linalg::project_center(SymMatrix::adjacency(two_k2)));
  EXPECT_NEAR(s.values[0], 1.0, 1e-12);
  EXPECT_NEAR(s.values[1], 0.0, 1e-12);
  EXPECT_NEAR(s.values[2], -1.0, 1e-12);
  EXPECT_NEAR(s.values[3], -1.0, 1e-12);
}

TEST(ProjectCenter, AnnihilatesOnes) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterRng rng(11, t);
    const int n = 2 + static_cast<int>(rng.below(40));
    const auto p = linalg::project_center(t % 2 ? random_symmetric(n, rng) : SymMatrix::adjacency(random_graph(n, 0.5, rng)));
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    for (double x : linalg::multiply(p, ones)) ASSERT_NEAR(x, 0.0, 1e-12 * n);
  }
}

TEST(PsdAndRank, Examples) {
  EXPECT_TRUE(linalg::psd_on_complement(SymMatrix::identity(4)));
  EXPECT_FALSE(linalg::psd_on_complement(-1.0 * SymMatrix::identity(4)));
  const double l2 = 2.0 * std::cos(2.0 * std::numbers::pi / 5);
  const SymMatrix bbar = l2 * SymMatrix::identity(5) - SymMatrix::adjacency(cycle_graph(5));
  EXPECT_TRUE(linalg::psd_on_complement(bbar));
  EXPECT_EQ(linalg::rank_with_tol(SymMatrix::ones(6)), 1);
  EXPECT_EQ(linalg::rank_with_tol(SymMatrix(6)), 0);
  EXPECT_EQ(linalg::rank_with_tol(SymMatrix::identity(6)), 6);
}

TEST(Interlacing, CompressionInterlacesAdjacency) {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CounterRng rng(12, t);
    const int n = 3 + static_cast<int>(rng.below(13));
    const SymMatrix a = SymMatrix::adjacency(random_graph(n, 0.5, rng));
    const auto lam = linalg::eigenvalues(a).values;
    auto mu = linalg::eigenvalues(linalg::project_center(a)).values;
    // drop one zero for the all-ones direction
    auto z = std::min_element(mu.begin(), mu.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    mu.erase(z);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      ASSERT_GE(lam[j] + 1e-8, mu[j]);
      ASSERT_GE(mu[j] + 1e-8, lam[j + 1]);
    }
  }
}
