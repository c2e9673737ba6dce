#include "qmc1d/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qmc1d/errors.hpp"

namespace qmc1d {

namespace {

void validate(const DmcParams& p) {
  if (p.n_particles < 1) throw ValidationError("n_particles must be >= 1");
  if (!(p.tau > 0.0)) throw ValidationError("tau must be > 0");
  if (p.target_population < 100)
    throw ValidationError("target_population must be >= 100");
  if (p.n_equil_blocks < 0)
    throw ValidationError("n_equil_blocks must be >= 0");
  if (p.n_blocks < 2) throw ValidationError("n_blocks must be >= 2");
  if (p.steps_per_block < 1)
    throw ValidationError("steps_per_block must be >= 1");
  if (p.workers < 1) throw ValidationError("workers must be >= 1");
  if (p.sample_stride < 0) throw ValidationError("sample_stride must be >= 0");
}

double min_pair_gap(const std::vector<double>& x) {
  auto s = x;
  std::sort(s.begin(), s.end());
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < s.size(); ++i)
    gap = std::min(gap, s[i + 1] - s[i]);
  return gap;
}

// Walker propagation scratch; thread_local so workers do not contend.
struct Scratch {
  std::vector<double> xp, f_old, f_new;
};
Scratch& scratch() {
  static thread_local Scratch s;
  return s;
}

// Drift-diffusion proposal with drift-corrected Metropolis acceptance; keeps
// |psi_T|^2 stationary at finite tau.  Returns true when the move landed.
bool propagate_walker(Walker& w, const TrialSpec& t, const TrapSpec& trap,
                      double tau, std::uint64_t* pathological) {
  auto& s = scratch();
  const size_t n = w.x.size();
  s.xp.resize(n);
  s.f_old.resize(n);
  s.f_new.resize(n);

  trial::drift(t, w.x, s.f_old);
  const double root_tau = std::sqrt(tau);
  bool in_box = true;
  for (size_t i = 0; i < n; ++i) {
    s.xp[i] = w.x[i] + tau * s.f_old[i] + root_tau * w.rng.normal();
    if (trap.kind == TrapKind::Lattice &&
        std::abs(s.xp[i]) >= trap.half_width)
      in_box = false;
  }
  if (!in_box) return false;  // hard wall: reject outright

  double lp_new, e_new;
  try {
    lp_new = trial::log_psi(t, s.xp);
    if (!std::isfinite(lp_new)) return false;
    trial::drift(t, s.xp, s.f_new);
    e_new = trial::local_energy(t, trap, s.xp);
    if (!std::isfinite(e_new)) {
      ++*pathological;
      return false;
    }
  } catch (const NumericalError&) {
    ++*pathological;  // proposal landed on a pair coincidence
    return false;
  }

  // log of G(x'->x)/G(x->x') for gaussian kernels of variance tau.
  double lg = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double fwd = s.xp[i] - w.x[i] - tau * s.f_old[i];
    const double rev = w.x[i] - s.xp[i] - tau * s.f_new[i];
    lg += (fwd * fwd - rev * rev) / (2.0 * tau);
  }
  const double log_ratio = 2.0 * (lp_new - w.log_psi) + lg;
  if (log_ratio < 0.0 && w.rng.uniform() >= std::exp(log_ratio)) return false;

  w.x = s.xp;
  w.log_psi = lp_new;
  w.e_local = e_new;
  return true;
}

}  // namespace

double WalkerEnsemble::total_weight() const {
  double s = 0.0;
  for (const auto& w : walkers) s += w.weight;
  return s;
}

WalkerEnsemble init_ensemble(const TrialSpec& t, const TrapSpec& trap,
                             const DmcParams& p) {
  WalkerEnsemble ens;
  ens.seed = p.seed;
  ens.next_lineage = static_cast<std::uint64_t>(p.target_population);
  ens.walkers.reserve(p.target_population);

  const double width = 1.0 / std::sqrt(t.beta);
  for (int k = 0; k < p.target_population; ++k) {
    Rng rng(p.seed, static_cast<std::uint64_t>(k));
    std::vector<double> x(p.n_particles);
    for (int attempt = 0;; ++attempt) {
      do {
        for (auto& v : x) {
          if (trap.kind == TrapKind::Lattice)
            v = rng.uniform(-0.95 * trap.half_width, 0.95 * trap.half_width);
          else
            v = rng.normal() * width;
        }
      } while (x.size() > 1 && min_pair_gap(x) < 1e-9);
      // short Metropolis warmup so walkers start inside the typical set
      for (int sweep = 0; sweep < 50; ++sweep) {
        for (int i = 0; i < p.n_particles; ++i) {
          const double xi = x[i] + rng.uniform(-width, width);
          if (trap.kind == TrapKind::Lattice &&
              std::abs(xi) >= trap.half_width)
            continue;
          const double d = trial::log_psi_move_delta(t, x, i, xi);
          if (d >= 0.0 || rng.uniform() < std::exp(2.0 * d)) x[i] = xi;
        }
      }
      try {
        Walker w{x, trial::log_psi(t, x), trial::local_energy(t, trap, x),
                 1.0, rng};
        if (std::isfinite(w.log_psi) && std::isfinite(w.e_local)) {
          ens.walkers.push_back(std::move(w));
          break;
        }
      } catch (const NumericalError&) {
        // coincidence right at the warmup endpoint: redraw
      }
      if (attempt > 100)
        throw SamplerAbort("could not seed a finite-energy walker");
    }
  }

  double e0 = 0.0;
  for (const auto& w : ens.walkers) e0 += w.e_local;
  e0 /= static_cast<double>(ens.walkers.size());
  ens.e_best = e0;
  ens.e_trial = e0;
  ens.target_weight = static_cast<double>(p.target_population);
  return ens;
}

DmcStepStats dmc_step(WalkerEnsemble& ens, const TrialSpec& t,
                      const TrapSpec& trap, double tau, Rng& branch_rng,
                      int workers) {
  DmcStepStats st;
  const int n_walkers = static_cast<int>(ens.walkers.size());
  st.attempted = static_cast<std::uint64_t>(n_walkers);

  std::vector<double> e_old(n_walkers);
  for (int i = 0; i < n_walkers; ++i) e_old[i] = ens.walkers[i].e_local;

  std::uint64_t accepted = 0, pathological = 0;
  if (workers <= 1 || n_walkers < 2 * workers) {
    for (int i = 0; i < n_walkers; ++i)
      if (propagate_walker(ens.walkers[i], t, trap, tau, &pathological))
        ++accepted;
  } else {
    std::vector<std::thread> pool;
    std::vector<std::uint64_t> acc(workers, 0), path(workers, 0);
    std::vector<std::exception_ptr> errs(workers);
    for (int k = 0; k < workers; ++k) {
      const int w0 = static_cast<int>(
          static_cast<long long>(k) * n_walkers / workers);
      const int w1 = static_cast<int>(
          static_cast<long long>(k + 1) * n_walkers / workers);
      pool.emplace_back([&, k, w0, w1] {
        try {
          for (int i = w0; i < w1; ++i)
            if (propagate_walker(ens.walkers[i], t, trap, tau, &path[k]))
              ++acc[k];
        } catch (...) {
          errs[k] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    for (int k = 0; k < workers; ++k) {
      accepted += acc[k];
      pathological += path[k];
    }
  }
  st.accepted = accepted;
  st.pathological = pathological;

  // branching: multiply weights, then stochastic-rounding split/kill
  for (int i = 0; i < n_walkers; ++i) {
    auto& w = ens.walkers[i];
    w.weight *= std::exp(-tau * (0.5 * (e_old[i] + w.e_local) - ens.e_trial));
    // a single-step multiplier this large means tau is far beyond stability;
    // bail before the split floods memory
    if (!std::isfinite(w.weight) || w.weight > 1e3) {
      char wtext[32];
      std::snprintf(wtext, sizeof wtext, "%.3g", w.weight);
      throw SamplerAbort("branching weight " + std::string(wtext) +
                         " exploded; reduce tau");
    }
  }
  std::vector<Walker> next;
  next.reserve(ens.walkers.size() + 16);
  for (auto& w : ens.walkers) {
    if (w.weight > 2.0) {
      const int copies = static_cast<int>(w.weight) +
                         (branch_rng.uniform() < w.weight -
                                                     std::floor(w.weight)
                              ? 1
                              : 0);
      w.weight = 1.0;
      for (int c = 1; c < copies; ++c) {
        Walker child = w;
        child.rng = Rng(ens.seed, ens.next_lineage++);
        next.push_back(std::move(child));
      }
      if (copies > 0) next.push_back(std::move(w));
    } else if (w.weight < 1.0 / 3.0) {
      if (branch_rng.uniform() < w.weight) {
        w.weight = 1.0;
        next.push_back(std::move(w));
      }
    } else {
      next.push_back(std::move(w));
    }
  }
  ens.walkers = std::move(next);

  for (const auto& w : ens.walkers) {
    st.mixed_sum += w.weight * w.e_local;
    st.weight_sum += w.weight;
  }
  if (ens.walkers.empty())
    throw SamplerAbort("walker population collapsed to zero");

  // population control: steer E_T toward holding total weight at target
  const double step_mixed = st.mixed_sum / st.weight_sum;
  ens.e_best += 0.05 * (step_mixed - ens.e_best);
  ens.e_trial =
      ens.e_best -
      (1.0 / (10.0 * tau)) * std::log(st.weight_sum / ens.target_weight);
  return st;
}

DmcResult run_dmc(const TrialSpec& t, const TrapSpec& trap,
                  const DmcParams& p, SampleSink* sink) {
  validate(p);
  if ((t.family == TrialFamily::CpwfLattice) !=
      (trap.kind == TrapKind::Lattice))
    throw ValidationError("trial family does not match the trap kind");

  WalkerEnsemble ens = init_ensemble(t, trap, p);
  Rng branch_rng(p.seed, ~std::uint64_t{0});

  DmcResult r;
  BlockAccumulator acc(p.steps_per_block);
  RunningVariance var;
  std::uint64_t accepted = 0, attempted = 0;
  double e_trial_sum = 0.0;
  std::uint64_t e_trial_n = 0;
  const int total_blocks = p.n_equil_blocks + p.n_blocks;
  int step_index = 0;

  for (int b = 0; b < total_blocks; ++b) {
    const bool measuring = b >= p.n_equil_blocks;
    double pop_sum = 0.0;
    for (int s = 0; s < p.steps_per_block; ++s, ++step_index) {
      const auto st = dmc_step(ens, t, trap, p.tau, branch_rng, p.workers);
      const double count = static_cast<double>(ens.walkers.size());
      if (count < 10.0)
        throw SamplerAbort("population collapsed to " +
                           std::to_string(ens.walkers.size()) + " at step " +
                           std::to_string(step_index));
      if (count > 100.0 * p.target_population)
        throw SamplerAbort("population exploded to " +
                           std::to_string(ens.walkers.size()) + " at step " +
                           std::to_string(step_index));
      r.n_rejected_pathological += st.pathological;
      if (!measuring) continue;

      acc.add(st.mixed_sum / st.weight_sum, st.weight_sum);
      accepted += st.accepted;
      attempted += st.attempted;
      pop_sum += count;
      e_trial_sum += ens.e_trial;
      ++e_trial_n;
      for (const auto& w : ens.walkers) var.add(w.e_local);
      if (sink != nullptr && p.sample_stride > 0 &&
          (step_index + 1) % p.sample_stride == 0)
        for (const auto& w : ens.walkers) sink->on_sample(w.x, w.weight);
    }
    if (measuring)
      r.population_trace.push_back(pop_sum / p.steps_per_block);
  }

  r.energy = acc.estimate(static_cast<double>(accepted) /
                          static_cast<double>(attempted));
  r.e_trial_mean = e_trial_sum / static_cast<double>(e_trial_n);
  r.e_variance = var.variance();
  return r;
}

EnergyEstimate timestep_extrapolate(
    const std::vector<std::pair<double, EnergyEstimate>>& points) {
  if (points.size() < 2)
    throw ValidationError("timestep extrapolation needs >= 2 points");
  double tau_min = points.front().first, tau_max = tau_min;
  bool have_errors = true;
  for (const auto& [tau, e] : points) {
    if (!(tau > 0.0)) throw ValidationError("tau values must be > 0");
    tau_min = std::min(tau_min, tau);
    tau_max = std::max(tau_max, tau);
    if (!(e.std_err > 0.0)) have_errors = false;
  }
  if (tau_max - tau_min <= 0.0)
    throw ValidationError("degenerate fit: all tau values equal");

  // weighted least squares for E = E0 + c*tau; zero-error inputs (exact
  // synthetic data) fall back to an unweighted fit
  double S = 0, Sx = 0, Sxx = 0, Sy = 0, Sxy = 0;
  for (const auto& [tau, e] : points) {
    const double w = have_errors ? 1.0 / (e.std_err * e.std_err) : 1.0;
    S += w;
    Sx += w * tau;
    Sxx += w * tau * tau;
    Sy += w * e.mean;
    Sxy += w * tau * e.mean;
  }
  const double det = S * Sxx - Sx * Sx;
  if (det <= 0.0) throw NumericalError("singular extrapolation fit");

  EnergyEstimate out;
  out.mean = (Sxx * Sy - Sx * Sxy) / det;
  out.std_err = have_errors ? std::sqrt(Sxx / det) : 0.0;
  for (const auto& [tau, e] : points) out.n_blocks += e.n_blocks;
  out.acceptance = 0.0;
  return out;
}

}  // namespace qmc1d
