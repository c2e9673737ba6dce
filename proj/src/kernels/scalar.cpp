#include <cmath>

#include "qmc1d/kernels.hpp"

// Reference implementations: straightforward loops, no tricks. The SIMD
// backend is validated against these, so keep them obviously correct.

namespace qmc1d::kernels {
namespace {

double sum_sq_scalar(const double* x, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double lattice_potential_sum_scalar(const double* x, int n, double v0,
                                    double phi) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = std::sin(M_PI * x[i] / 2.0 + phi);
    s += t * t;
  }
  return v0 * s;
}

void gauss_mix_logs_scalar(const double* x, int n, const double* centers,
                           const double* weights, int m, double beta,
                           double* log_s, double* dlog, double* d2log) {
  for (int i = 0; i < n; ++i) {
    // Shift exponents by the largest one so the mixture sum cannot underflow
    // even when every component is far from x.
    double emax = -1e300;
    for (int j = 0; j < m; ++j) {
      const double d = x[i] - centers[j];
      const double e = -beta * d * d;
      if (e > emax) emax = e;
    }
    double s = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double d = x[i] - centers[j];
      const double w = weights[j] * std::exp(-beta * d * d - emax);
      s += w;
      s1 += w * (-2.0 * beta * d);
      s2 += w * (4.0 * beta * beta * d * d - 2.0 * beta);
    }
    log_s[i] = std::log(s) + emax;
    const double g = s1 / s;
    dlog[i] = g;
    d2log[i] = s2 / s - g * g;
  }
}

void pair_diffs_scalar(const double* x, int n, double* dx) {
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) dx[p++] = x[i] - x[j];
  }
}

double cosine_pair_terms_scalar(const double* dx, int npairs, double k,
                                double l, double* r, double* d2) {
  const double half_l = 0.5 * l;
  const double log_plateau = std::log(std::cos(k * half_l));
  double log_sum = 0.0;
  for (int p = 0; p < npairs; ++p) {
    const double ax = std::abs(dx[p]);
    if (ax < l) {
      const double t = k * (ax - half_l);
      const double tn = std::tan(t);
      const double sgn = dx[p] < 0.0 ? -1.0 : 1.0;
      log_sum += std::log(std::cos(t));
      r[p] = -k * tn * sgn;
      d2[p] = -k * k * (1.0 + tn * tn);
    } else {
      log_sum += log_plateau;
      r[p] = 0.0;
      d2[p] = 0.0;
    }
  }
  return log_sum;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar",
                         sum_sq_scalar,
                         lattice_potential_sum_scalar,
                         gauss_mix_logs_scalar,
                         pair_diffs_scalar,
                         cosine_pair_terms_scalar};
  return b;
}

}  // namespace qmc1d::kernels
