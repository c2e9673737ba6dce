#include "qmc1d/trial.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmc1d/errors.hpp"
#include "qmc1d/kernels.hpp"
#include "qmc1d/specfun.hpp"
#include "qmc1d/summation.hpp"

namespace qmc1d {

TrialSpec build_trial(TrialFamily family, const TrapSpec& trap,
                      const Coupling& g, const TrialOverrides& ov) {
  TrialSpec t;
  t.family = family;
  const bool harmonic = trap.kind == TrapKind::Harmonic;
  switch (family) {
    case TrialFamily::CpwfHarmonic:
      if (!harmonic) {
        throw ValidationError("CpwfHarmonic requires a harmonic trap");
      }
      t.beta = ov.beta.value_or(1.0);
      t.nu = interaction::nu_from_g(g);
      break;
    case TrialFamily::CosineJastrow:
      if (!harmonic) {
        throw ValidationError("CosineJastrow requires a harmonic trap");
      }
      t.beta = ov.beta.value_or(1.0);
      t.pair_range = ov.pair_range.value_or(2.0);
      if (!(t.pair_range > 0.0)) {
        throw ValidationError("cosine pair range L must be positive");
      }
      t.k = interaction::k_from_g(g, t.pair_range);
      break;
    case TrialFamily::CpwfLattice:
      if (trap.kind != TrapKind::Lattice) {
        throw ValidationError("CpwfLattice requires a lattice trap");
      }
      if (ov.beta.has_value()) {
        t.beta = *ov.beta;
      } else {
        if (!(trap.v0 > 0.0)) {
          throw ValidationError(
              "CpwfLattice default beta = sqrt(v0) needs v0 > 0");
        }
        t.beta = std::sqrt(trap.v0);
      }
      t.nu = interaction::nu_from_g(g);
      t.centers = model::well_centers(trap);
      t.weights.assign(t.centers.size(), 1.0);
      break;
  }
  if (!(t.beta > 0.0) || !std::isfinite(t.beta)) {
    throw ValidationError("trial beta must be positive and finite");
  }
  return t;
}

namespace trial {
namespace {

constexpr double kCoincidenceTol = 1e-12;

// Per-pair hypergeometric factor f = U(-nu/2, 1/2, dx^2/2) in log form:
// returns log f and fills r = dlog f/d(dx), d2 = d2 log f/d(dx)^2. Uses the
// recurrence f'' = x f' - nu f, so no second derivative of U is needed and
// the hard-core limit nu = 1 comes out exact (f = |dx|/sqrt(2)).
double cpwf_pair(double nu, double dxv, double* r, double* d2) {
  const double a = -0.5 * nu;
  const double z = 0.5 * dxv * dxv;
  const double u = specfun::u_half(a, z);
  const double w = specfun::u_half_dz(a, z) / u;
  const double rv = dxv * w;
  *r = rv;
  *d2 = dxv * rv - nu - rv * rv;
  return std::log(u);
}

void spp_terms(const TrialSpec& t, std::span<const double> x,
               TrialWorkspace& ws) {
  const int n = static_cast<int>(x.size());
  ws.spp_log.resize(n);
  ws.spp_dlog.resize(n);
  ws.spp_d2log.resize(n);
  const auto& kb = kernels::active_backend();
  if (t.family == TrialFamily::CpwfLattice) {
    kb.gauss_mix_logs(x.data(), n, t.centers.data(), t.weights.data(),
                      static_cast<int>(t.centers.size()), t.beta,
                      ws.spp_log.data(), ws.spp_dlog.data(),
                      ws.spp_d2log.data());
    return;
  }
  // Harmonic-trap SPP: log s = -beta x^2 / 2.
  for (int i = 0; i < n; ++i) {
    ws.spp_log[i] = -0.5 * t.beta * x[i] * x[i];
    ws.spp_dlog[i] = -t.beta * x[i];
    ws.spp_d2log[i] = -t.beta;
  }
}

double spp_log_one(const TrialSpec& t, double xv) {
  if (t.family == TrialFamily::CpwfLattice) {
    double ls, dl, d2l;
    kernels::active_backend().gauss_mix_logs(
        &xv, 1, t.centers.data(), t.weights.data(),
        static_cast<int>(t.centers.size()), t.beta, &ls, &dl, &d2l);
    return ls;
  }
  return -0.5 * t.beta * xv * xv;
}

double cosine_pair_log_one(const TrialSpec& t, double dxv) {
  const double ax = std::abs(dxv);
  const double arg = ax < t.pair_range ? ax : t.pair_range;
  return std::log(std::cos(t.k * (arg - 0.5 * t.pair_range)));
}

double cpwf_pair_log_one(const TrialSpec& t, double dxv) {
  return std::log(specfun::u_half(-0.5 * t.nu, 0.5 * dxv * dxv));
}

// Pair terms for CPWF families: fills ws.pr / ws.pd2 per packed pair and
// returns the summed log factor. Throws on interacting-pair coincidence when
// derivatives are requested, since drift and curvature are singular or
// direction-ambiguous there.
double cpwf_pair_terms(const TrialSpec& t, TrialWorkspace& ws, int npairs) {
  double log_sum = 0.0;
  for (int p = 0; p < npairs; ++p) {
    const double dxv = ws.dx[p];
    if (std::abs(dxv) < kCoincidenceTol) {
      throw NumericalError(
          "trial: interacting pair at coincidence (|x_ij| < 1e-12)");
    }
    log_sum += cpwf_pair(t.nu, dxv, &ws.pr[p], &ws.pd2[p]);
  }
  return log_sum;
}

}  // namespace

void evaluate_all(const TrialSpec& t, const TrapSpec& trap,
                  std::span<const double> x, TrialWorkspace& ws,
                  TrialEval& out) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw ValidationError("trial: empty configuration");
  const auto& kb = kernels::active_backend();

  if (trap.kind == TrapKind::Lattice) {
    for (double xi : x) {
      if (!trap.contains(xi)) {
        throw ValidationError("trial: configuration outside the box");
      }
    }
  }

  spp_terms(t, x, ws);
  out.grad.assign(n, 0.0);
  double lap = 0.0;

  const int npairs = n * (n - 1) / 2;
  double pair_log = 0.0;
  if (t.has_pair_factor() && npairs > 0) {
    ws.dx.resize(npairs);
    ws.pr.resize(npairs);
    ws.pd2.resize(npairs);
    kb.pair_diffs(x.data(), n, ws.dx.data());
    if (t.family == TrialFamily::CosineJastrow) {
      pair_log = kb.cosine_pair_terms(ws.dx.data(), npairs, t.k, t.pair_range,
                                      ws.pr.data(), ws.pd2.data());
    } else {
      pair_log = cpwf_pair_terms(t, ws, npairs);
    }
    int p = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++p) {
        out.grad[i] += ws.pr[p];
        out.grad[j] -= ws.pr[p];
        lap += 2.0 * ws.pd2[p];
      }
    }
  }

  double spp_log_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    out.grad[i] += ws.spp_dlog[i];
    lap += ws.spp_d2log[i];
    spp_log_sum += ws.spp_log[i];
  }
  out.log_psi = spp_log_sum + pair_log;
  out.lap_log = lap;

  out.e_pot = trap.kind == TrapKind::Harmonic
                  ? 0.5 * kb.sum_sq(x.data(), n)
                  : kb.lattice_potential_sum(x.data(), n, trap.v0, trap.phi);

  // lap + |grad|^2 cancels almost exactly in the zero-variance limits;
  // compensated summation keeps the residual at the true fp floor.
  NeumaierSum kin;
  kin.add(lap);
  for (int i = 0; i < n; ++i) kin.add(out.grad[i] * out.grad[i]);
  out.local_energy = out.e_pot - 0.5 * kin.value();
}

double log_psi(const TrialSpec& t, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw ValidationError("trial: empty configuration");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += spp_log_one(t, x[i]);
  if (!t.has_pair_factor()) return sum;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dxv = x[i] - x[j];
      sum += t.family == TrialFamily::CosineJastrow
                 ? cosine_pair_log_one(t, dxv)
                 : cpwf_pair_log_one(t, dxv);
    }
  }
  return sum;
}

void drift(const TrialSpec& t, std::span<const double> x,
           std::span<double> out) {
  if (out.size() != x.size()) {
    throw ValidationError("trial: drift output size mismatch");
  }
  thread_local TrialWorkspace ws;
  thread_local TrialEval ev;
  // The trap only affects e_pot, which drift ignores; harmonic is always a
  // valid stand-in and skips the box check.
  evaluate_all(t, TrapSpec::harmonic(), x, ws, ev);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = ev.grad[i];
}

double local_energy(const TrialSpec& t, const TrapSpec& trap,
                    std::span<const double> x) {
  thread_local TrialWorkspace ws;
  thread_local TrialEval ev;
  evaluate_all(t, trap, x, ws, ev);
  return ev.local_energy;
}

double log_psi_move_delta(const TrialSpec& t, std::span<const double> x,
                          int i, double xi_new) {
  const int n = static_cast<int>(x.size());
  if (i < 0 || i >= n) throw ValidationError("trial: move index out of range");
  double delta = spp_log_one(t, xi_new) - spp_log_one(t, x[i]);
  if (!t.has_pair_factor()) return delta;
  const bool cosine = t.family == TrialFamily::CosineJastrow;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double dn = xi_new - x[j];
    const double dold = x[i] - x[j];
    delta += cosine ? cosine_pair_log_one(t, dn) - cosine_pair_log_one(t, dold)
                    : cpwf_pair_log_one(t, dn) - cpwf_pair_log_one(t, dold);
  }
  return delta;
}

}  // namespace trial
}  // namespace qmc1d
