#include "qmc1d/stats.hpp"

#include <cmath>
#include <cstdint>

#include "qmc1d/errors.hpp"
#include "qmc1d/specfun.hpp"

namespace qmc1d {

BlockAccumulator::BlockAccumulator(int samples_per_block)
    : samples_per_block_(samples_per_block) {
  if (samples_per_block < 1)
    throw ValidationError("block length must be at least 1");
}

void BlockAccumulator::add(double value, double weight) {
  vsum_ += weight * value;
  wsum_ += weight;
  if (++filled_ == samples_per_block_) {
    if (wsum_ <= 0.0) throw NumericalError("block closed with zero weight");
    means_.push_back(vsum_ / wsum_);
    vsum_ = 0.0;
    wsum_ = 0.0;
    filled_ = 0;
  }
}

EnergyEstimate BlockAccumulator::estimate(double acceptance) const {
  return estimate_from_block_means(means_, acceptance);
}

EnergyEstimate estimate_from_block_means(std::span<const double> means,
                                         double acceptance) {
  const int m = static_cast<int>(means.size());
  if (m < 2) throw ValidationError("need at least 2 blocks for an estimate");
  double mean = 0.0;
  for (double b : means) mean += b;
  mean /= m;
  double ss = 0.0;
  for (double b : means) ss += (b - mean) * (b - mean);
  EnergyEstimate e;
  e.mean = mean;
  e.std_err = std::sqrt(ss / (static_cast<double>(m) * (m - 1)));
  e.n_blocks = m;
  e.acceptance = acceptance;
  return e;
}

void RunningVariance::add(double value) {
  ++n_;
  const double d = value - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (value - mean_);
}

void RunningVariance::merge(const RunningVariance& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double d = other.mean_ - mean_;
  mean_ += d * nb / (na + nb);
  m2_ += other.m2_ + d * d * na * nb / (na + nb);
  n_ += other.n_;
}

double RunningVariance::variance() const {
  if (n_ < 2) return 0.0;
  return m2_ / static_cast<double>(n_ - 1);
}

namespace {

// Lower-series / upper-continued-fraction split at x = s+1, evaluated in long
// double; standard approach for the regularized incomplete gamma.
long double gammp_series(long double s, long double x) {
  long double ap = s;
  long double term = 1.0L / s;
  long double sum = term;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0L;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-19L)
      return sum * std::exp(-x + s * std::log(x)) *
             specfun::rgamma(double(s));
  }
  throw NumericalError("incomplete gamma series failed to converge");
}

long double gammq_cf(long double s, long double x) {
  // Modified Lentz continued fraction for Q(s, x).
  const long double tiny = 1e-4000L;
  long double b = x + 1.0L - s;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const long double an = -static_cast<long double>(i) * (i - s);
    b += 2.0L;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0L) < 1e-19L)
      return h * std::exp(-x + s * std::log(x)) *
             specfun::rgamma(double(s));
  }
  throw NumericalError("incomplete gamma continued fraction failed");
}

}  // namespace

double gammq(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0))
    throw ValidationError("gammq requires s > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0)
    return static_cast<double>(1.0L - gammp_series(s, x));
  return static_cast<double>(gammq_cf(s, x));
}

double chi_squared_pvalue(double statistic, int dof) {
  if (dof < 1) throw ValidationError("chi-squared dof must be >= 1");
  if (!(statistic >= 0.0))
    throw ValidationError("chi-squared statistic must be >= 0");
  return gammq(0.5 * dof, 0.5 * statistic);
}

ChiSquaredResult chi_squared_test(std::span<const double> observed,
                                  std::span<const double> expected,
                                  double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw ValidationError("chi-squared test needs matching non-empty bins");
  // Pool adjacent bins until each group carries enough expectation for the
  // chi-squared approximation to hold.
  std::vector<double> obs_g, exp_g;
  double o = 0.0, e = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    o += observed[i];
    e += expected[i];
    if (e >= min_expected) {
      obs_g.push_back(o);
      exp_g.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (obs_g.empty()) {
      obs_g.push_back(o);
      exp_g.push_back(e);
    } else {
      obs_g.back() += o;
      exp_g.back() += e;
    }
  }
  if (obs_g.size() < 2)
    throw ValidationError("chi-squared test pooled to fewer than 2 groups");
  ChiSquaredResult r;
  for (size_t i = 0; i < obs_g.size(); ++i) {
    const double d = obs_g[i] - exp_g[i];
    r.statistic += d * d / exp_g[i];
  }
  r.dof = static_cast<int>(obs_g.size()) - 1;
  r.p_value = chi_squared_pvalue(r.statistic, r.dof);
  return r;
}

}  // namespace qmc1d
