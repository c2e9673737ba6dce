#pragma once

#include <cstdint>
#include <vector>

#include "qmc1d/rng.hpp"
#include "qmc1d/stats.hpp"
#include "qmc1d/trial.hpp"
#include "qmc1d/vmc.hpp"

namespace qmc1d {

struct DmcParams {
  int n_particles = 1;
  double tau = 0.005;          // imaginary timestep
  int target_population = 1000;
  int n_equil_blocks = 10;
  int n_blocks = 50;
  int steps_per_block = 100;
  std::uint64_t seed = 1;
  int workers = 1;
  int sample_stride = 0;  // steps between sink callbacks; 0 disables
};

struct Walker {
  std::vector<double> x;
  double log_psi = 0.0;  // cached at x
  double e_local = 0.0;  // cached at x
  double weight = 1.0;
  Rng rng;               // private stream, keyed by (seed, lineage id)
};

struct WalkerEnsemble {
  std::vector<Walker> walkers;
  double e_trial = 0.0;        // population-control reference energy E_T
  double e_best = 0.0;         // slow running mixed estimate feeding E_T
  double target_weight = 0.0;
  std::uint64_t next_lineage = 0;
  std::uint64_t seed = 0;

  double total_weight() const;
};

// Seeds `target_population` walkers from short Metropolis warmup chains and
// initializes E_T at the starting mixed estimate.
WalkerEnsemble init_ensemble(const TrialSpec& t, const TrapSpec& trap,
                             const DmcParams& p);

struct DmcStepStats {
  std::uint64_t accepted = 0;
  std::uint64_t attempted = 0;
  std::uint64_t pathological = 0;  // proposals rejected at coincidences
  double mixed_sum = 0.0;   // sum of weight * E_L after branching
  double weight_sum = 0.0;  // sum of weights after branching
};

// One drift-diffusion-branching generation: propose per walker, accept with
// the drift-corrected Green's-function ratio, multiply branching weights,
// split/kill, then adjust E_T toward the population target.
DmcStepStats dmc_step(WalkerEnsemble& ens, const TrialSpec& t,
                      const TrapSpec& trap, double tau, Rng& branch_rng,
                      int workers = 1);

struct DmcResult {
  EnergyEstimate energy;            // mixed estimator, block averaged
  double e_trial_mean = 0.0;        // mean E_T over measurement blocks
  double e_variance = 0.0;          // variance of walker local energies
  std::vector<double> population_trace;  // mean walker count per block
  std::uint64_t n_rejected_pathological = 0;
};

DmcResult run_dmc(const TrialSpec& t, const TrapSpec& trap,
                  const DmcParams& params, SampleSink* sink = nullptr);

// Weighted linear fit E(tau) = E0 + c*tau; returns E0 with the propagated
// fit error.  Needs at least two distinct tau values.
EnergyEstimate timestep_extrapolate(
    const std::vector<std::pair<double, EnergyEstimate>>& points);

}  // namespace qmc1d
