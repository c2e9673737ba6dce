#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qmc1d/vmc.hpp"

namespace qmc1d {

// Uniform-bin weighted histogram over [lo, hi).  Out-of-range entries are
// counted, not binned.  After normalize(), sum(value * bin_width) = 1.
class Histogram1D {
 public:
  Histogram1D(double lo, double hi, int nbins);

  void add(double x, double weight = 1.0);
  void merge(const Histogram1D& other);  // requires identical binning
  void normalize();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int nbins() const { return nbins_; }
  double bin_width() const { return (hi_ - lo_) / nbins_; }
  double center(int b) const { return lo_ + (b + 0.5) * bin_width(); }
  const std::vector<double>& values() const { return w_; }
  double total_weight() const { return total_; }
  std::uint64_t n_out_of_range() const { return n_out_; }
  bool normalized() const { return normalized_; }
  bool same_binning(const Histogram1D& other) const;

 private:
  double lo_, hi_;
  int nbins_;
  std::vector<double> w_;
  double total_ = 0.0;
  std::uint64_t n_out_ = 0;
  bool normalized_ = false;
};

// Square-domain 2D histogram, row-major cells; cell(i, j) covers
// [edge_i, edge_i+1) x [edge_j, edge_j+1) on a common axis.
class Histogram2D {
 public:
  Histogram2D(double lo, double hi, int nbins);

  void add(double x, double y, double weight = 1.0);
  void merge(const Histogram2D& other);
  void normalize();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int nbins() const { return nbins_; }
  double bin_width() const { return (hi_ - lo_) / nbins_; }
  double center(int b) const { return lo_ + (b + 0.5) * bin_width(); }
  double cell(int i, int j) const { return w_[size_t(i) * nbins_ + j]; }
  const std::vector<double>& values() const { return w_; }
  double total_weight() const { return total_; }
  std::uint64_t n_out_of_range() const { return n_out_; }
  bool normalized() const { return normalized_; }
  bool same_binning(const Histogram2D& other) const;

  // marginal over the second axis: row sums scaled by bin width
  std::vector<double> marginal() const;

 private:
  double lo_, hi_;
  int nbins_;
  std::vector<double> w_;
  double total_ = 0.0;
  std::uint64_t n_out_ = 0;
  bool normalized_ = false;
};

// Pairwise-tree merge keeps the reduction order fixed regardless of how many
// partial histograms the workers produced.
Histogram1D merge_all(std::vector<Histogram1D> parts);
Histogram2D merge_all(std::vector<Histogram2D> parts);

// Sample sinks feeding histograms from VMC/DMC streams.  Every particle
// coordinate lands in the density histogram; every ordered pair (i, j) lands
// in the pair histogram, so exchange symmetry holds cell-by-cell exactly.
class DensityAccumulator : public SampleSink {
 public:
  DensityAccumulator(double lo, double hi, int nbins) : h_(lo, hi, nbins) {}
  void on_sample(std::span<const double> config, double weight) override;
  Histogram1D& hist() { return h_; }
  const Histogram1D& hist() const { return h_; }

 private:
  Histogram1D h_;
};

class PairAccumulator : public SampleSink {
 public:
  PairAccumulator(double lo, double hi, int nbins) : h_(lo, hi, nbins) {}
  void on_sample(std::span<const double> config, double weight) override;
  Histogram2D& hist() { return h_; }
  const Histogram2D& hist() const { return h_; }

 private:
  Histogram2D h_;
};

// First-order bias correction 2*mixed - variational, clipped at zero and
// renormalized.  Both inputs must be normalized on identical bins.
Histogram1D extrapolated_estimate(const Histogram1D& mixed,
                                  const Histogram1D& variational);
Histogram2D extrapolated_estimate(const Histogram2D& mixed,
                                  const Histogram2D& variational);

// Local maxima of the 5-bin moving average that rise above 5% of its global
// maximum; the optional window restricts which bin centers are counted while
// smoothing still sees the whole histogram.
int count_smoothed_maxima(const Histogram1D& h);
int count_smoothed_maxima(const Histogram1D& h, double window_lo,
                          double window_hi);

// CSV: 1D as "center,value" rows; 2D as a row-major grid prefixed with a
// header row of bin centers.  All floats at 12 significant digits.
void write_csv(const Histogram1D& h, std::ostream& os);
void write_csv(const Histogram2D& h, std::ostream& os);

std::string to_json_string(const Histogram1D& h);
std::string to_json_string(const Histogram2D& h);

}  // namespace qmc1d
