#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qmc1d/interaction.hpp"
#include "qmc1d/model.hpp"

namespace qmc1d {

// CpwfHarmonic / CpwfLattice share the hypergeometric pair factor
// U(-nu/2, 1/2, x_ij^2/2) and differ in the single-particle part (one
// Gaussian vs a sum of per-well Gaussians). CosineJastrow is the standard
// trigonometric pair factor over a harmonic single-particle part.
enum class TrialFamily { CpwfHarmonic, CosineJastrow, CpwfLattice };

// Fully resolved trial parameters; build_trial derives them from the physics
// inputs so samplers never touch the interaction module.
struct TrialSpec {
  TrialFamily family = TrialFamily::CpwfHarmonic;
  double beta = 1.0;            // SPP width
  double nu = 0.0;              // pair quantum number (CPWF)
  double k = 0.0;               // pair wavenumber (cosine)
  double pair_range = 0.0;      // L (cosine)
  std::vector<double> centers;  // well centers (lattice SPP)
  std::vector<double> weights;  // per-well amplitudes (lattice SPP)

  bool has_pair_factor() const {
    return family == TrialFamily::CosineJastrow ? k > 0.0 : nu > 0.0;
  }
};

struct TrialOverrides {
  std::optional<double> beta;
  std::optional<double> pair_range;
};

// Derives nu or k from the coupling and fills in family defaults
// (beta = 1 for harmonic traps, beta = sqrt(v0) and unit well weights for
// lattices, pair range L = 2 for the cosine family). Throws ValidationError
// when the family does not fit the trap.
TrialSpec build_trial(TrialFamily family, const TrapSpec& trap,
                      const Coupling& g, const TrialOverrides& ov = {});

// Everything a sampler wants at one configuration, in one pass.
struct TrialEval {
  double log_psi = 0.0;
  std::vector<double> grad;  // d log psi / d x_i; also the DMC drift
  double lap_log = 0.0;      // sum_i d^2 log psi / d x_i^2
  double e_pot = 0.0;
  double local_energy = 0.0;
};

// Scratch buffers reused across evaluations to keep the samplers
// allocation-free in their hot loops.
struct TrialWorkspace {
  std::vector<double> dx, pr, pd2, spp_log, spp_dlog, spp_d2log;
};

namespace trial {

void evaluate_all(const TrialSpec& t, const TrapSpec& trap,
                  std::span<const double> x, TrialWorkspace& ws,
                  TrialEval& out);

double log_psi(const TrialSpec& t, std::span<const double> x);

// Fills out[i] = d log psi / d x_i.
void drift(const TrialSpec& t, std::span<const double> x,
           std::span<double> out);

// E_L = sum V(x_i) - (1/2) sum_i [d2 log psi + (d log psi)^2]. The contact
// term is carried by the trial's derivative discontinuity, never evaluated.
// Throws NumericalError if an interacting pair sits closer than 1e-12.
double local_energy(const TrialSpec& t, const TrapSpec& trap,
                    std::span<const double> x);

// log psi(x with x_i -> xi_new) - log psi(x), in O(N) for the Metropolis
// inner loop. Returns -inf when the move lands on a pair node.
double log_psi_move_delta(const TrialSpec& t, std::span<const double> x,
                          int i, double xi_new);

}  // namespace trial
}  // namespace qmc1d
