#include "qmc1d/kernels.hpp"

// This translation unit is built with -mavx2 -mfma on x86-64 (see CMake); on
// aarch64 the baseline already includes ASIMD. Anywhere else it degrades to a
// null backend and dispatch falls back to scalar.
#if defined(__AVX2__) || defined(__aarch64__)

#include <cmath>
#include <experimental/simd>

namespace stdx = std::experimental;

namespace qmc1d::kernels {
namespace {

using vd = stdx::native_simd<double>;
constexpr int kLanes = static_cast<int>(vd::size());

double sum_sq_simd(const double* x, int n) {
  vd acc = 0.0;
  int i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vd v;
    v.copy_from(x + i, stdx::element_aligned);
    acc += v * v;
  }
  double s = stdx::reduce(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double lattice_potential_sum_simd(const double* x, int n, double v0,
                                  double phi) {
  const vd half_pi_slope = M_PI / 2.0;
  vd acc = 0.0;
  int i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vd v;
    v.copy_from(x + i, stdx::element_aligned);
    const vd t = stdx::sin(half_pi_slope * v + vd(phi));
    acc += t * t;
  }
  double s = stdx::reduce(acc);
  for (; i < n; ++i) {
    const double t = std::sin(M_PI * x[i] / 2.0 + phi);
    s += t * t;
  }
  return v0 * s;
}

void gauss_mix_logs_simd(const double* x, int n, const double* centers,
                         const double* weights, int m, double beta,
                         double* log_s, double* dlog, double* d2log) {
  const vd vbeta = beta;
  int i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vd xi;
    xi.copy_from(x + i, stdx::element_aligned);
    vd emax = -1e300;
    for (int j = 0; j < m; ++j) {
      const vd d = xi - vd(centers[j]);
      emax = stdx::max(emax, -vbeta * d * d);
    }
    vd s = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < m; ++j) {
      const vd d = xi - vd(centers[j]);
      const vd w = vd(weights[j]) * stdx::exp(-vbeta * d * d - emax);
      s += w;
      s1 += w * (-2.0 * beta * d);
      s2 += w * (4.0 * beta * beta * d * d - vd(2.0 * beta));
    }
    const vd g = s1 / s;
    (stdx::log(s) + emax).copy_to(log_s + i, stdx::element_aligned);
    g.copy_to(dlog + i, stdx::element_aligned);
    (s2 / s - g * g).copy_to(d2log + i, stdx::element_aligned);
  }
  if (i < n) {
    scalar_backend().gauss_mix_logs(x + i, n - i, centers, weights, m, beta,
                                    log_s + i, dlog + i, d2log + i);
  }
}

void pair_diffs_simd(const double* x, int n, double* dx) {
  int p = 0;
  for (int i = 0; i < n; ++i) {
    const vd xi = x[i];
    int j = i + 1;
    for (; j + kLanes <= n; j += kLanes) {
      vd xj;
      xj.copy_from(x + j, stdx::element_aligned);
      (xi - xj).copy_to(dx + p, stdx::element_aligned);
      p += kLanes;
    }
    for (; j < n; ++j) dx[p++] = x[i] - x[j];
  }
}

double cosine_pair_terms_simd(const double* dx, int npairs, double k, double l,
                              double* r, double* d2) {
  const double half_l = 0.5 * l;
  const double log_plateau = std::log(std::cos(k * half_l));
  vd acc = 0.0;
  int p = 0;
  for (; p + kLanes <= npairs; p += kLanes) {
    vd d;
    d.copy_from(dx + p, stdx::element_aligned);
    const vd ax = stdx::abs(d);
    const auto inside = ax < vd(l);
    // Inactive lanes get t = 0 so cos/log stay benign; their results are
    // masked out below.
    vd t = vd(k) * (ax - vd(half_l));
    stdx::where(!inside, t) = vd(0.0);
    const vd tn = stdx::tan(t);
    vd sgn = 1.0;
    stdx::where(d < vd(0.0), sgn) = vd(-1.0);
    vd logf = stdx::log(stdx::cos(t));
    stdx::where(!inside, logf) = vd(log_plateau);
    acc += logf;
    vd rv = -vd(k) * tn * sgn;
    vd d2v = -vd(k * k) * (vd(1.0) + tn * tn);
    stdx::where(!inside, rv) = vd(0.0);
    stdx::where(!inside, d2v) = vd(0.0);
    rv.copy_to(r + p, stdx::element_aligned);
    d2v.copy_to(d2 + p, stdx::element_aligned);
  }
  double log_sum = stdx::reduce(acc);
  if (p < npairs) {
    log_sum +=
        scalar_backend().cosine_pair_terms(dx + p, npairs - p, k, l, r + p,
                                           d2 + p);
  }
  return log_sum;
}

bool simd_supported_at_runtime() {
#if defined(__AVX2__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return true;  // ASIMD is baseline on aarch64
#endif
}

}  // namespace

const Backend* simd_backend() {
  if (!simd_supported_at_runtime()) return nullptr;
  static const Backend b{
#if defined(__AVX2__)
      "avx2",
#else
      "neon",
#endif
      sum_sq_simd,
      lattice_potential_sum_simd,
      gauss_mix_logs_simd,
      pair_diffs_simd,
      cosine_pair_terms_simd};
  return &b;
}

}  // namespace qmc1d::kernels

#else  // no SIMD target

namespace qmc1d::kernels {
const Backend* simd_backend() { return nullptr; }
}  // namespace qmc1d::kernels

#endif
