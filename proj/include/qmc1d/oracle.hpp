#pragma once

#include "qmc1d/interaction.hpp"
#include "qmc1d/model.hpp"
#include "qmc1d/trial.hpp"

namespace qmc1d {
namespace oracle {

struct GridSpec {
  double x_min;
  double x_max;
  int n_points;  // >= 100
};

// Exact two-body harmonic-trap energy: relative quantum number plus the
// center-of-mass ground energy.
double busch_energy_two_body(Coupling g);

// Smallest eigenvalue of the second-order finite-difference discretization of
// -(1/2) d^2/dx^2 + V with Dirichlet values at the grid ends, via bisection
// on the Sturm sequence.  No refinement; O(h^2) bias.
double fd_ground_energy_raw(const TrapSpec& trap, const GridSpec& grid);

// Richardson-refined over the given grid and its halved-spacing partner;
// aborts when the two-grid residual says the O(h^2) model does not hold.
double fd_ground_energy(const TrapSpec& trap, const GridSpec& grid);

// Deterministic cell-centered quadrature of <E_L>_{psi^2} for 2 or 3
// particles in the harmonic trap.  Axis cell counts are staggered
// (n, n+1, n+2) so no two cell centers ever collide on a coincidence plane;
// converged when a 1.5x-refined pass agrees to 1e-3.
double quad_energy_cpwf(const TrialSpec& t, const TrapSpec& trap,
                        int n_particles, const GridSpec& grid);

}  // namespace oracle
}  // namespace qmc1d
