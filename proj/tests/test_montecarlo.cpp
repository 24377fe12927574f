#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "twodist/montecarlo.hpp"

using namespace twodist;

TEST(Sample, SameSeedSameHitsAcrossWorkerCounts) {
  const auto a = estimate_fraction(8, 3000, 0.5, 77, 1);
  const auto b = estimate_fraction(8, 3000, 0.5, 77, 3);
  const auto c = estimate_fraction(8, 3000, 0.5, 77, 1);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.hits, c.hits);
  const auto d = estimate_fraction(8, 3000, 0.5, 78, 1);
  EXPECT_NE(a.hits, d.hits);
}

TEST(Sample, StandardErrorFormula) {
  const auto r = estimate_fraction(7, 2000, 0.5, 5);
  EXPECT_GE(r.hits, 0);
  EXPECT_LE(r.hits, r.trials);
  EXPECT_DOUBLE_EQ(r.fraction, static_cast<double>(r.hits) / 2000.0);
  EXPECT_DOUBLE_EQ(r.std_error, std::sqrt(r.fraction * (1.0 - r.fraction) / 2000.0));
}

TEST(Sample, DegenerateProbabilities) {
  // p = 0 gives edgeless graphs and p = 1 complete graphs, both never spherical
  EXPECT_EQ(estimate_fraction(6, 50, 0.0, 1).hits, 0);
  EXPECT_EQ(estimate_fraction(6, 50, 1.0, 1).hits, 0);
}

TEST(Sample, RejectsBadArguments) {
  EXPECT_THROW(estimate_fraction(8, 0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(estimate_fraction(8, 10, -0.1, 1), std::invalid_argument);
  EXPECT_THROW(estimate_fraction(2, 10, 0.5, 1), std::invalid_argument);
}

TEST(Sample, FractionFallsWithOrder) {
  const auto r8 = estimate_fraction(8, 20000, 0.5, 9);
  const auto r9 = estimate_fraction(9, 20000, 0.5, 9);
  const auto r10 = estimate_fraction(10, 20000, 0.5, 9);
  EXPECT_GT(r8.fraction - r9.fraction, 3.0 * std::hypot(r8.std_error, r9.std_error));
  EXPECT_GT(r9.fraction - r10.fraction, 3.0 * std::hypot(r9.std_error, r10.std_error));
}

TEST(Export, SampleCsv) {
  SampleResult r;
  r.n = 8;
  r.trials = 4;
  r.hits = 1;
  r.fraction = 0.25;
  r.std_error = std::sqrt(0.25 * 0.75 / 4);
  r.seed = 3;
  EXPECT_EQ(sample_csv({r}), "n,trials,hits,fraction,stderr,seed\n8,4,1,0.25,0.2165063509,3\n");
  EXPECT_EQ(sample_csv({}), "n,trials,hits,fraction,stderr,seed\n");
  const auto path = (std::filesystem::temp_directory_path() / "twodist_samples.csv").string();
  export_samples({r}, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,trials,hits,fraction,stderr,seed");
  std::filesystem::remove(path);
  EXPECT_THROW(export_samples({r}, "/nonexistent/dir/x.csv"), std::runtime_error);
}
