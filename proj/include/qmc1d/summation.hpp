#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace qmc1d {

// Neumaier compensated accumulator. Local-energy assembly adds terms of
// opposite sign that cancel almost exactly in the zero-variance limits, so the
// naive sum would leave O(eps * |terms|) noise on a result that must vanish.
class NeumaierSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

  void reset() {
    sum_ = 0.0;
    comp_ = 0.0;
  }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Pairwise (cascade) sum; error grows like log(n) instead of n.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    NeumaierSum s;
    for (double x : v) s.add(x);
    return s.value();
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace qmc1d
