#pragma once

namespace qmc1d {

// Contact interaction strength. The hard-core limit is a distinct state, not
// a large double, so parsers and formulas can treat it exactly.
struct Coupling {
  double value = 0.0;
  bool infinite = false;

  static Coupling finite(double g);  // validates g >= 0
  static Coupling tonks();           // hard-core limit

  bool is_zero() const { return !infinite && value == 0.0; }
};

namespace interaction {

// Interaction strength for a given pair quantum number nu in [0, 1], from the
// contact condition of the two-body relative problem in the trap, written in
// the pole-free form 2^{3/2} G((1-nu)/2) G(1+nu/2) sin(pi nu/2) / pi.
// Monotone increasing, g(0) = 0, g(1) = +inf.
double g_from_nu(double nu);

// Inverse of g_from_nu on the ground-state branch; bisection, since the
// derivative diverges as nu -> 1. Tonks maps to exactly 1.
double nu_from_g(const Coupling& g);

// Wavenumber of the cosine pair factor cos[k(|x| - L/2)], from the contact
// condition g = k tan(kL/2), k in [0, pi/L]. Tonks maps to exactly pi/L
// (node at contact).
double k_from_g(const Coupling& g, double period_l);

}  // namespace interaction
}  // namespace qmc1d
