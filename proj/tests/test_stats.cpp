#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qmc1d/errors.hpp"
#include "qmc1d/rng.hpp"
#include "qmc1d/stats.hpp"

using namespace qmc1d;

TEST_CASE("block accumulator means and standard error") {
  BlockAccumulator acc(2);
  for (double v : {1.0, 3.0, 5.0, 7.0, 2.0, 4.0}) acc.add(v);
  REQUIRE(acc.n_blocks() == 3);
  CHECK(acc.block_means() == std::vector<double>{2.0, 6.0, 3.0});
  const auto e = acc.estimate(0.5);
  // mean 11/3, sample sd of {2,6,3} = sqrt(13/3), stderr = sd/sqrt(3)
  CHECK(std::abs(e.mean - 11.0 / 3.0) < 1e-14);
  CHECK(std::abs(e.std_err - std::sqrt(13.0 / 3.0) / std::sqrt(3.0)) < 1e-14);
  CHECK(e.n_blocks == 3);
  CHECK(e.acceptance == 0.5);

  SUBCASE("partial trailing block is dropped") {
    acc.add(100.0);
    CHECK(acc.n_blocks() == 3);
  }
  SUBCASE("weighted samples average within the block") {
    BlockAccumulator w(2);
    w.add(10.0, 3.0);
    w.add(2.0, 1.0);  // (30 + 2) / 4 = 8
    w.add(1.0, 1.0);
    w.add(1.0, 1.0);
    CHECK(w.block_means() == std::vector<double>{8.0, 1.0});
  }
  SUBCASE("fewer than two blocks rejected") {
    BlockAccumulator one(10);
    one.add(1.0);
    CHECK_THROWS_AS(one.estimate(), ValidationError);
  }
}

TEST_CASE("running variance matches the two-pass formula and merges") {
  Rng rng(11, 0);
  std::vector<double> xs(1000);
  for (auto& v : xs) v = rng.normal() * 2.5 + 7.0;
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= xs.size();
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  const double want = ss / (xs.size() - 1);

  RunningVariance all;
  for (double v : xs) all.add(v);
  CHECK(std::abs(all.variance() - want) < 1e-12 * want);

  RunningVariance a, b;
  for (size_t i = 0; i < xs.size(); ++i) (i < 321 ? a : b).add(xs[i]);
  a.merge(b);
  CHECK(a.count() == 1000);
  CHECK(std::abs(a.mean() - mean) < 1e-13 * std::abs(mean));
  CHECK(std::abs(a.variance() - want) < 1e-12 * want);
}

TEST_CASE("regularized upper incomplete gamma") {
  // Reference values computed with mpmath gammainc(s, x, inf, regularized).
  CHECK(std::abs(gammq(0.5, 2.0) - 0.045500263896358414) < 1e-14);
  CHECK(std::abs(gammq(5.0, 1.5) - 0.98142406377785933) < 1e-14);
  CHECK(std::abs(gammq(24.5, 24.5) - 0.47312829565476522) < 1e-13);
  CHECK(std::abs(gammq(24.5, 40.0) - 0.0034012114117295849) < 1e-15);
  CHECK(gammq(3.0, 0.0) == 1.0);
  CHECK(gammq(1.0, 700.0) < 1e-300);
  CHECK_THROWS_AS(gammq(-1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(gammq(1.0, -2.0), ValidationError);
}

TEST_CASE("chi-squared p-values") {
  // Exponential tail: dof=2 gives p = exp(-x/2).
  CHECK(std::abs(chi_squared_pvalue(3.0, 2) - std::exp(-1.5)) < 1e-14);
  // Median of chi2(1) at statistic ~0.4549 gives p ~ 0.5.
  CHECK(std::abs(chi_squared_pvalue(0.45493642311957283, 1) - 0.5) < 1e-12);
  CHECK(chi_squared_pvalue(0.0, 5) == 1.0);
  // scipy.stats.chi2.sf(74.919474, 49) = 0.01 (the 99th percentile).
  CHECK(std::abs(chi_squared_pvalue(74.91947430847816, 49) - 0.01) < 1e-12);
  CHECK_THROWS_AS(chi_squared_pvalue(1.0, 0), ValidationError);
}

TEST_CASE("chi-squared test pools underfull bins") {
  SUBCASE("uniform counts with no pooling") {
    std::vector<double> obs = {12, 8, 11, 9};
    std::vector<double> exp_(4, 10.0);
    const auto r = chi_squared_test(obs, exp_);
    CHECK(r.dof == 3);
    CHECK(std::abs(r.statistic - (4 + 4 + 1 + 1) / 10.0) < 1e-14);
    CHECK(r.p_value > 0.5);
  }
  SUBCASE("tiny tail bins merge into neighbors") {
    std::vector<double> obs = {1, 0, 50, 49, 0, 2};
    std::vector<double> exp_ = {0.5, 1.5, 48, 51, 1.0, 1.0};
    const auto r = chi_squared_test(obs, exp_);
    // groups: {0.5+1.5+48}, {51}, then trailing {1,1} folds back
    CHECK(r.dof == 1);
    CHECK(r.p_value > 0.1);
  }
  SUBCASE("perfect agreement gives p = 1") {
    std::vector<double> v = {20, 30, 50};
    const auto r = chi_squared_test(v, v);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
  }
}
