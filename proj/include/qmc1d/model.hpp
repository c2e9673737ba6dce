#pragma once

#include <vector>

namespace qmc1d {

enum class TrapKind { Harmonic, Lattice };

// External trap geometry. Harmonic is V = x^2/2 on the whole line; Lattice is
// V = v0 sin^2(pi x / 2 + phi) inside a hard-wall box |x| <= half_width.
struct TrapSpec {
  TrapKind kind = TrapKind::Harmonic;
  double v0 = 0.0;
  double phi = 0.0;
  double half_width = 0.0;

  static TrapSpec harmonic();
  static TrapSpec lattice(double v0, double phi, double half_width);
  // Paper presets: two isolated wells (box +-5/2, phi = pi/2) and three
  // (box +-7/2, phi = 0), both at depth v0 = 40.
  static TrapSpec double_well();
  static TrapSpec triple_well();

  bool contains(double x) const {
    return kind == TrapKind::Harmonic ||
           (x >= -half_width && x <= half_width);
  }
};

namespace model {

// Potential energy of one particle. Throws ValidationError outside a lattice
// box; samplers must reject such moves before evaluating anything.
double potential_eval(const TrapSpec& trap, double x);

// Positions of the potential minima inside the box, ascending. sin^2 places
// them exactly at x = 2m - 2 phi / pi for integer m, no search needed.
std::vector<double> well_centers(const TrapSpec& trap);

// Tonks-Girardeau ground-state energy in the harmonic trap: N^2 / 2, from
// the free-fermion mapping.
double e_tg(int n);

// Effective 1D coupling from the 3D scattering length and the transverse
// confinement length. Throws NumericalError at the confinement-induced
// resonance where the denominator vanishes.
double g1d_from_3d(double a_3d, double a_perp);

}  // namespace model
}  // namespace qmc1d
