#include "qmc1d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmc1d/errors.hpp"

namespace qmc1d {
namespace oracle {

namespace {

void validate_grid(const GridSpec& g) {
  if (!(g.x_min < g.x_max)) throw ValidationError("grid needs x_min < x_max");
  if (g.n_points < 100) throw ValidationError("grid needs >= 100 points");
}

// eigenvalue count below lambda for the symmetric tridiagonal (d, e) via the
// Sturm sequence; zero pivots are nudged so the recurrence can continue
int count_below(const std::vector<double>& d, double e, double lambda) {
  int count = 0;
  const double e2 = e * e;
  double q = d[0] - lambda;
  if (q == 0.0) q = 1e-300;
  if (q < 0.0) ++count;
  for (std::size_t k = 1; k < d.size(); ++k) {
    q = (d[k] - lambda) - e2 / q;
    if (q == 0.0) q = 1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double smallest_eigenvalue(const std::vector<double>& d, double e) {
  double lo = d[0], hi = d[0];
  for (double dk : d) {
    lo = std::min(lo, dk);
    hi = std::max(hi, dk);
  }
  lo -= 2.0 * std::abs(e);
  hi += 2.0 * std::abs(e);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(d, e, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double busch_energy_two_body(Coupling g) {
  if (g.infinite) return 2.0;
  return interaction::nu_from_g(g) + 1.0;
}

double fd_ground_energy_raw(const TrapSpec& trap, const GridSpec& grid) {
  validate_grid(grid);
  double x_min = grid.x_min, x_max = grid.x_max;
  if (trap.kind == TrapKind::Lattice) {
    if (x_min > -trap.half_width || x_max < trap.half_width)
      throw ValidationError("grid must cover the hard-wall box");
    x_min = -trap.half_width;  // walls are the Dirichlet boundary
    x_max = trap.half_width;
  }
  const int n = grid.n_points;
  const double h = (x_max - x_min) / (n - 1);
  // unknowns at interior nodes 1..n-2; psi = 0 at both ends
  std::vector<double> d(n - 2);
  for (int k = 1; k <= n - 2; ++k)
    d[k - 1] = 1.0 / (h * h) + model::potential_eval(trap, x_min + k * h);
  const double e = -0.5 / (h * h);
  return smallest_eigenvalue(d, e);
}

double fd_ground_energy(const TrapSpec& trap, const GridSpec& grid) {
  const double coarse = fd_ground_energy_raw(trap, grid);
  GridSpec fine = grid;
  fine.n_points = 2 * grid.n_points - 1;  // exact h/2 with aligned nodes
  const double refined = fd_ground_energy_raw(trap, fine);
  if (std::abs(refined - coarse) > 3e-4 * (1.0 + std::abs(refined)))
    throw NumericalError("finite-difference energies did not converge");
  return (4.0 * refined - coarse) / 3.0;
}

namespace {

double quad_pass(const TrialSpec& t, const TrapSpec& trap, int n_particles,
                 const GridSpec& grid, int base) {
  // staggered per-axis counts: pairs of axes never share a cell-center
  // ordinate, so x_i = x_j is structurally excluded (parity argument on
  // (2i+1)*n_b = (2k+1)*n_a with one even count)
  int counts[3] = {base, base + 1, base + 2};
  const double span = grid.x_max - grid.x_min;

  TrialWorkspace ws;
  TrialEval ev;
  std::vector<double> x(n_particles);
  long double num = 0.0L, den = 0.0L;

  const auto center = [&](int axis, int idx) {
    return grid.x_min + span * (idx + 0.5) / counts[axis];
  };

  for (int i = 0; i < counts[0]; ++i) {
    x[0] = center(0, i);
    for (int j = 0; j < counts[1]; ++j) {
      x[1] = center(1, j);
      if (n_particles == 2) {
        trial::evaluate_all(t, trap, x, ws, ev);
        const long double w = std::exp(2.0L * (long double)ev.log_psi);
        num += w * ev.local_energy;
        den += w;
      } else {
        for (int k = 0; k < counts[2]; ++k) {
          x[2] = center(2, k);
          trial::evaluate_all(t, trap, x, ws, ev);
          const long double w = std::exp(2.0L * (long double)ev.log_psi);
          num += w * ev.local_energy;
          den += w;
        }
      }
    }
  }
  if (den <= 0.0L) throw NumericalError("quadrature weight vanished");
  return static_cast<double>(num / den);
}

}  // namespace

double quad_energy_cpwf(const TrialSpec& t, const TrapSpec& trap,
                        int n_particles, const GridSpec& grid) {
  validate_grid(grid);
  if (n_particles != 2 && n_particles != 3)
    throw ValidationError("quadrature supports 2 or 3 particles");
  if (trap.kind != TrapKind::Harmonic)
    throw ValidationError("quadrature supports the harmonic trap");

  int base = grid.n_points;
  if (base % 2 == 1) ++base;  // even base keeps the parity exclusion
  int refined = (3 * base) / 2;
  if (refined % 2 == 1) ++refined;

  const double coarse_e = quad_pass(t, trap, n_particles, grid, base);
  const double fine_e = quad_pass(t, trap, n_particles, grid, refined);
  if (std::abs(fine_e - coarse_e) > 1e-3 * (1.0 + std::abs(fine_e)))
    throw NumericalError("quadrature did not converge at this grid");
  return fine_e;
}

}  // namespace oracle
}  // namespace qmc1d
