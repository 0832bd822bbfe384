#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "filex/stats.hpp"
#include "oracle.hpp"

namespace {

using namespace filex;

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(shannon_entropy_bits(std::vector<double>(64, 1.0 / 64)), 6.0, 1e-12);
  EXPECT_EQ(shannon_entropy_bits(std::vector<double>{1.0, 0, 0, 0}), 0.0);
  // -(3/4 log2 3/4 + 1/4 log2 1/4), 30-digit evaluation: 0.811278124459132863...
  EXPECT_NEAR(shannon_entropy_bits(std::vector<double>{0.75, 0.25}), 0.811278124459133, 1e-12);
}

TEST(Entropy, RejectsUnnormalized) {
  EXPECT_THROW(shannon_entropy_bits(std::vector<double>{0.5, 0.6}), InvalidInput);
  EXPECT_THROW(shannon_entropy_bits(std::vector<double>{}), InvalidInput);
  EXPECT_THROW(shannon_entropy_bits(std::vector<double>{1.5, -0.5}), InvalidInput);
  EXPECT_NO_THROW(shannon_entropy_bits(std::vector<double>{0.5, 0.5 + 1e-10}));
}

TEST(Entropy, BoundsAndPermutationInvariance) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(1 + gen() % 50);
    double sum = 0;
    for (double& x : p) sum += (x = std::exponential_distribution<>(1.0)(gen));
    for (double& x : p) x /= sum;
    const double h = shannon_entropy_bits(p);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(static_cast<double>(p.size())) + 1e-12);
    std::shuffle(p.begin(), p.end(), gen);
    EXPECT_NEAR(shannon_entropy_bits(p), h, 1e-12);
  }
}

TEST(KendallTau, PerfectAndSmallCases) {
  EXPECT_DOUBLE_EQ(kendall_tau({{1, 2, 3, 4}, {1, 2, 3, 4}}).tau, 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau({{1, 2, 3, 4}, {4, 3, 2, 1}}).tau, -1.0);
  // Pairs (1,2) and (1,3) concordant, (2,3) discordant.
  EXPECT_DOUBLE_EQ(kendall_tau({{1, 2, 3}, {1, 3, 2}}).tau, 1.0 / 3.0);
  EXPECT_EQ(kendall_tau({{1, 2, 3}, {1, 3, 2}}).n, 3u);
}

TEST(KendallTau, Errors) {
  EXPECT_THROW(kendall_tau({{1, 1, 1}, {1, 2, 3}}), UndefinedCorrelation);
  EXPECT_THROW(kendall_tau({{1, 2, 3}, {5, 5, 5}}), UndefinedCorrelation);
  EXPECT_THROW(kendall_tau({{1}, {1}}), InvalidInput);
  EXPECT_THROW(kendall_tau({{1, 2}, {1}}), InvalidInput);
  EXPECT_THROW(kendall_tau({{1, NAN}, {1, 2}}), InvalidInput);
}

// Reference values from scipy.stats.kendalltau(x, y, method='asymptotic').
TEST(KendallTau, MatchesScipyWithTies) {
  const PairedSeries small{{1, 2, 2, 3, 4, 5, 5, 5, 6, 7, 8, 9},
                           {2, 1, 3, 3, 5, 4, 6, 6, 8, 7, 9, 9}};
  auto r = kendall_tau(small);
  EXPECT_NEAR(r.tau, 0.8640276493271748, 1e-14);
  EXPECT_NEAR(r.p_value, 0.00016334425586048802, 1e-12);

  const PairedSeries larger{
      {6, 6, 4, 2, 0, 3, 3, 0, 0, 7, 5, 1, 3, 7, 7, 6, 3, 3, 5, 0,
       4, 2, 7, 0, 5, 6, 1, 7, 6, 0, 5, 0, 4, 3, 1, 2, 6, 2, 1, 5},
      {-0, -1, -4, -0, -2, -1, -1, -3, -0, -2, -0, -2, 0, -4, -3, -3, 1, -0, 2, 1,
       0,  1,  -3, -0, 1,  -2, -0, -2, -1, -1, -2, 0,  -1, -2, 1,  -3, -4, -3, 1, -2}};
  r = kendall_tau(larger);
  EXPECT_NEAR(r.tau, -0.29278090423156594, 1e-14);
  EXPECT_NEAR(r.p_value, 0.017524944000456927, 1e-12);
}

PairedSeries random_series(std::mt19937_64& gen, std::size_t n, int levels) {
  PairedSeries s;
  while (true) {
    s.x.assign(n, 0);
    s.y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      s.x[i] = static_cast<double>(gen() % levels);
      s.y[i] = static_cast<double>(gen() % levels);
    }
    const bool x_const = std::all_of(s.x.begin(), s.x.end(), [&](double v) { return v == s.x[0]; });
    const bool y_const = std::all_of(s.y.begin(), s.y.end(), [&](double v) { return v == s.y[0]; });
    if (!x_const && !y_const) return s;
  }
}

TEST(KendallTau, MatchesBruteForcePairCounting) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + gen() % 30;
    const auto s = random_series(gen, n, 2 + static_cast<int>(gen() % 10));
    EXPECT_EQ(kendall_tau(s).tau, oracle::brute_force_tau_b(s.x, s.y));
  }
}

TEST(KendallTau, AntisymmetryAndMonotoneInvariance) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    PairedSeries s;
    const std::size_t n = 3 + gen() % 60;
    for (std::size_t i = 0; i < n; ++i) {
      s.x.push_back(std::exp(normal(gen)));
      s.y.push_back(normal(gen));
    }
    const double tau = kendall_tau(s).tau;

    PairedSeries neg = s;
    for (double& y : neg.y) y = -y;
    EXPECT_DOUBLE_EQ(kendall_tau(neg).tau, -tau);

    PairedSeries increasing = s;
    for (double& x : increasing.x) x = std::log(x) * 3 + 1;
    EXPECT_DOUBLE_EQ(kendall_tau(increasing).tau, tau);

    PairedSeries inverse = s;
    for (double& x : inverse.x) x = 1.0 / x;
    EXPECT_DOUBLE_EQ(kendall_tau(inverse).tau, -tau);
  }
}

TEST(KendallTau, PValueRange) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_series(gen, 2 + gen() % 40, 3 + static_cast<int>(gen() % 20));
    const auto r = kendall_tau(s);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_LE(std::abs(r.tau), 1.0);
  }
}

}  // namespace
