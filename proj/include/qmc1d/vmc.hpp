#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "qmc1d/stats.hpp"
#include "qmc1d/trial.hpp"

namespace qmc1d {

struct VmcParams {
  int n_particles = 1;
  int n_walkers = 50;
  int n_equil_steps = 500;  // tuning sweeps, dropped from averages
  int n_steps = 5000;       // measurement sweeps per walker
  double step_size = 1.0;   // initial half-width of uniform moves
  int n_blocks = 50;        // n_steps must divide evenly into these
  std::uint64_t seed = 1;
  int workers = 1;
  int sample_stride = 0;  // sweeps between sink callbacks; 0 disables
};

// Receives configurations from a sampler at the configured stride.  Called
// under a lock when workers > 1; implementations need not be thread-safe.
class SampleSink {
 public:
  virtual ~SampleSink() = default;
  virtual void on_sample(std::span<const double> config, double weight) = 0;
};

struct VmcResult {
  EnergyEstimate energy;
  double step_used = 0.0;  // mean frozen step across walkers
  double e_variance = 0.0; // sample variance of the local energy
  std::uint64_t n_samples = 0;
  std::uint64_t n_discarded = 0;
};

// Metropolis sampling of |psi_T|^2 with single-particle moves.  Each walker
// is an independent chain with its own RNG stream keyed by (seed, walker), so
// results do not depend on how walkers are partitioned across workers.
VmcResult run_vmc(const TrialSpec& t, const TrapSpec& trap,
                  const VmcParams& params, SampleSink* sink = nullptr);

// Grid search over the gaussian width; every grid point reuses the same seed
// (common random numbers) so the comparison is noise-robust.  Ties go to the
// smaller beta.
std::pair<double, EnergyEstimate> optimize_beta(
    TrialFamily family, const TrapSpec& trap, Coupling g,
    std::span<const double> beta_grid, const VmcParams& params);

}  // namespace qmc1d
