#pragma once

namespace qmc1d::kernels {

// Hot data-parallel primitives behind trial-function evaluation. Each has a
// plain scalar reference build and a SIMD build (AVX2+FMA on x86-64, ASIMD on
// aarch64); the two are equivalence-tested against each other.
struct Backend {
  const char* name;

  // sum of x_i^2
  double (*sum_sq)(const double* x, int n);

  // sum_i v0 sin^2(pi x_i / 2 + phi)
  double (*lattice_potential_sum)(const double* x, int n, double v0,
                                  double phi);

  // Per-particle log s, s'/s and (s''/s - (s'/s)^2) for the Gaussian mixture
  // s(x) = sum_j w_j exp(-beta (x - c_j)^2). Callers keep |x - c_j| small
  // enough that at least one term stays above the underflow threshold.
  void (*gauss_mix_logs)(const double* x, int n, const double* centers,
                         const double* weights, int m, double beta,
                         double* log_s, double* dlog, double* d2log);

  // Packed upper-triangle differences dx[p] = x_i - x_j for i < j, row-major
  // in i. dx must hold n(n-1)/2 entries.
  void (*pair_diffs)(const double* x, int n, double* dx);

  // Cosine pair factor f = cos[k(|dx| - l/2)] for |dx| < l, constant beyond.
  // Fills r[p] = dlog f/d(dx) and d2[p] = d2log f/d(dx)^2, returns the summed
  // log f. Requires k l / 2 < pi/2 so f stays positive.
  double (*cosine_pair_terms)(const double* dx, int npairs, double k, double l,
                              double* r, double* d2);
};

const Backend& scalar_backend();

// Null when the build or the CPU lacks SIMD support.
const Backend* simd_backend();

// Resolved once per process: the SIMD backend when available, else scalar.
// Environment override QMC1D_KERNELS=scalar|avx2|neon forces a choice and
// fails fast if it is not available.
const Backend& active_backend();

}  // namespace qmc1d::kernels
