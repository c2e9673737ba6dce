#include "qmc1d/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "qmc1d/errors.hpp"
#include "qmc1d/summation.hpp"

namespace qmc1d {

namespace {

void check_range(double lo, double hi, int nbins) {
  if (!(lo < hi)) throw ValidationError("histogram needs lo < hi");
  if (nbins < 1) throw ValidationError("histogram needs at least 1 bin");
}

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Histogram1D::Histogram1D(double lo, double hi, int nbins)
    : lo_(lo), hi_(hi), nbins_(nbins), w_(nbins, 0.0) {
  check_range(lo, hi, nbins);
}

bool Histogram1D::same_binning(const Histogram1D& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && nbins_ == o.nbins_;
}

void Histogram1D::add(double x, double weight) {
  if (normalized_) throw ValidationError("histogram is frozen by normalize()");
  if (x < lo_ || x >= hi_) {
    ++n_out_;
    return;
  }
  const int b = std::min(static_cast<int>((x - lo_) / bin_width()), nbins_ - 1);
  w_[b] += weight;
  total_ += weight;
}

void Histogram1D::merge(const Histogram1D& o) {
  if (!same_binning(o)) throw ValidationError("histogram binning mismatch");
  if (normalized_ || o.normalized_)
    throw ValidationError("cannot merge normalized histograms");
  for (int b = 0; b < nbins_; ++b) w_[b] += o.w_[b];
  total_ += o.total_;
  n_out_ += o.n_out_;
}

void Histogram1D::normalize() {
  if (total_ <= 0.0) throw ValidationError("cannot normalize empty histogram");
  const double scale = 1.0 / (total_ * bin_width());
  for (auto& v : w_) v *= scale;
  normalized_ = true;
}

Histogram2D::Histogram2D(double lo, double hi, int nbins)
    : lo_(lo), hi_(hi), nbins_(nbins),
      w_(static_cast<size_t>(nbins) * nbins, 0.0) {
  check_range(lo, hi, nbins);
}

bool Histogram2D::same_binning(const Histogram2D& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && nbins_ == o.nbins_;
}

void Histogram2D::add(double x, double y, double weight) {
  if (normalized_) throw ValidationError("histogram is frozen by normalize()");
  if (x < lo_ || x >= hi_ || y < lo_ || y >= hi_) {
    ++n_out_;
    return;
  }
  const int i = std::min(static_cast<int>((x - lo_) / bin_width()), nbins_ - 1);
  const int j = std::min(static_cast<int>((y - lo_) / bin_width()), nbins_ - 1);
  w_[static_cast<size_t>(i) * nbins_ + j] += weight;
  total_ += weight;
}

void Histogram2D::merge(const Histogram2D& o) {
  if (!same_binning(o)) throw ValidationError("histogram binning mismatch");
  if (normalized_ || o.normalized_)
    throw ValidationError("cannot merge normalized histograms");
  for (size_t c = 0; c < w_.size(); ++c) w_[c] += o.w_[c];
  total_ += o.total_;
  n_out_ += o.n_out_;
}

void Histogram2D::normalize() {
  if (total_ <= 0.0) throw ValidationError("cannot normalize empty histogram");
  const double scale = 1.0 / (total_ * bin_width() * bin_width());
  for (auto& v : w_) v *= scale;
  normalized_ = true;
}

std::vector<double> Histogram2D::marginal() const {
  std::vector<double> m(nbins_, 0.0);
  for (int i = 0; i < nbins_; ++i) {
    NeumaierSum row;
    for (int j = 0; j < nbins_; ++j) row.add(cell(i, j));
    m[i] = row.value() * bin_width();
  }
  return m;
}

namespace {

template <class H>
H merge_tree(std::vector<H> parts) {
  if (parts.empty()) throw ValidationError("nothing to merge");
  // pairwise tree: merge order independent of the partition count
  while (parts.size() > 1) {
    std::vector<H> next;
    next.reserve((parts.size() + 1) / 2);
    for (size_t i = 0; i + 1 < parts.size(); i += 2) {
      parts[i].merge(parts[i + 1]);
      next.push_back(std::move(parts[i]));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace

Histogram1D merge_all(std::vector<Histogram1D> parts) {
  return merge_tree(std::move(parts));
}
Histogram2D merge_all(std::vector<Histogram2D> parts) {
  return merge_tree(std::move(parts));
}

void DensityAccumulator::on_sample(std::span<const double> config,
                                   double weight) {
  for (double x : config) h_.add(x, weight);
}

void PairAccumulator::on_sample(std::span<const double> config,
                                double weight) {
  const size_t n = config.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      h_.add(config[i], config[j], weight);
      h_.add(config[j], config[i], weight);
    }
}

namespace {

// shared checks for the 2*mixed - variational correction
template <class H>
void check_extrapolation_inputs(const H& mixed, const H& variational) {
  if (!mixed.same_binning(variational))
    throw ValidationError("extrapolated estimate needs identical binning");
  if (!mixed.normalized() || !variational.normalized())
    throw ValidationError("extrapolated estimate needs normalized inputs");
}

}  // namespace

Histogram1D extrapolated_estimate(const Histogram1D& mixed,
                                  const Histogram1D& variational) {
  check_extrapolation_inputs(mixed, variational);
  Histogram1D out(mixed.lo(), mixed.hi(), mixed.nbins());
  bool any = false;
  for (int b = 0; b < out.nbins(); ++b) {
    const double v =
        std::max(0.0, 2.0 * mixed.values()[b] - variational.values()[b]);
    if (v > 0.0) {
      out.add(out.center(b), v);
      any = true;
    }
  }
  if (!any)
    throw NumericalError("extrapolated estimate clipped to zero everywhere");
  out.normalize();
  return out;
}

Histogram2D extrapolated_estimate(const Histogram2D& mixed,
                                  const Histogram2D& variational) {
  check_extrapolation_inputs(mixed, variational);
  Histogram2D out(mixed.lo(), mixed.hi(), mixed.nbins());
  bool any = false;
  for (int i = 0; i < out.nbins(); ++i)
    for (int j = 0; j < out.nbins(); ++j) {
      const double v = std::max(
          0.0, 2.0 * mixed.cell(i, j) - variational.cell(i, j));
      if (v > 0.0) {
        out.add(out.center(i), out.center(j), v);
        any = true;
      }
    }
  if (!any)
    throw NumericalError("extrapolated estimate clipped to zero everywhere");
  out.normalize();
  return out;
}

namespace {

std::vector<double> smooth5(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    const int a = std::max(0, i - 2), b = std::min(n - 1, i + 2);
    double sum = 0.0;
    for (int k = a; k <= b; ++k) sum += v[k];
    s[i] = sum / (b - a + 1);
  }
  return s;
}

}  // namespace

int count_smoothed_maxima(const Histogram1D& h, double window_lo,
                          double window_hi) {
  const auto s = smooth5(h.values());
  const int n = static_cast<int>(s.size());
  const double peak = *std::max_element(s.begin(), s.end());
  const double floor = 0.05 * peak;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const double c = h.center(i);
    if (c < window_lo || c > window_hi) continue;
    if (s[i] <= floor) continue;
    const double left = (i > 0) ? s[i - 1] : -1.0;
    const double right = (i + 1 < n) ? s[i + 1] : -1.0;
    // plateau rule: count the left edge of flat tops only
    if (s[i] > left && s[i] >= right) ++count;
  }
  return count;
}

int count_smoothed_maxima(const Histogram1D& h) {
  return count_smoothed_maxima(h, h.lo(), h.hi());
}

void write_csv(const Histogram1D& h, std::ostream& os) {
  os << "x,value\n";
  for (int b = 0; b < h.nbins(); ++b)
    os << fmt12(h.center(b)) << ',' << fmt12(h.values()[b]) << '\n';
}

void write_csv(const Histogram2D& h, std::ostream& os) {
  os << "x2_centers";
  for (int j = 0; j < h.nbins(); ++j) os << ',' << fmt12(h.center(j));
  os << '\n';
  for (int i = 0; i < h.nbins(); ++i) {
    os << fmt12(h.center(i));
    for (int j = 0; j < h.nbins(); ++j) os << ',' << fmt12(h.cell(i, j));
    os << '\n';
  }
}

std::string to_json_string(const Histogram1D& h) {
  nlohmann::json j;
  j["lo"] = h.lo();
  j["hi"] = h.hi();
  j["nbins"] = h.nbins();
  j["normalized"] = h.normalized();
  j["out_of_range"] = h.n_out_of_range();
  j["values"] = h.values();
  return j.dump(2);
}

std::string to_json_string(const Histogram2D& h) {
  nlohmann::json j;
  j["lo"] = h.lo();
  j["hi"] = h.hi();
  j["nbins"] = h.nbins();
  j["normalized"] = h.normalized();
  j["out_of_range"] = h.n_out_of_range();
  j["values"] = h.values();  // row-major
  return j.dump(2);
}

}  // namespace qmc1d
