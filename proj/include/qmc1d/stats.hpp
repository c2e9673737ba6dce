#pragma once

#include <span>
#include <vector>

namespace qmc1d {

// Block-averaged estimate of a scalar observable.  `std_err` is the standard
// error of the mean computed from the scatter of block means, which absorbs
// autocorrelation up to the block length.
struct EnergyEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  int n_blocks = 0;
  double acceptance = 0.0;
};

// Accumulates (optionally weighted) samples into fixed-length blocks.  A block
// closes after `samples_per_block` calls to add(); its mean is the
// weight-averaged value over the block.  Partial trailing blocks are dropped.
class BlockAccumulator {
 public:
  explicit BlockAccumulator(int samples_per_block);

  void add(double value, double weight = 1.0);
  const std::vector<double>& block_means() const { return means_; }
  int n_blocks() const { return static_cast<int>(means_.size()); }

  // Requires at least two closed blocks.
  EnergyEstimate estimate(double acceptance = 0.0) const;

 private:
  int samples_per_block_;
  int filled_ = 0;
  double vsum_ = 0.0;
  double wsum_ = 0.0;
  std::vector<double> means_;
};

EnergyEstimate estimate_from_block_means(std::span<const double> means,
                                         double acceptance = 0.0);

// Streaming mean/variance (Welford).  merge() combines two accumulators as if
// their samples were concatenated, so per-walker statistics can be reduced in
// a fixed order regardless of the worker partition.
class RunningVariance {
 public:
  void add(double value);
  void merge(const RunningVariance& other);
  long long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, n-1 denominator

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Regularized upper incomplete gamma Q(s, x), s > 0, x >= 0.
double gammq(double s, double x);

// Survival function of the chi-squared distribution: P(X^2 >= statistic).
double chi_squared_pvalue(double statistic, int dof);

// Pearson chi-squared test of observed counts against expected counts.
// Adjacent bins are pooled until each group's expectation reaches
// `min_expected` (a trailing underfull group is merged backwards), then
// dof = groups - 1.
struct ChiSquaredResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

ChiSquaredResult chi_squared_test(std::span<const double> observed,
                                  std::span<const double> expected,
                                  double min_expected = 10.0);

}  // namespace qmc1d
