#include "qmc1d/model.hpp"

#include <cmath>
#include <string>

#include "qmc1d/errors.hpp"

namespace qmc1d {

TrapSpec TrapSpec::harmonic() { return TrapSpec{TrapKind::Harmonic, 0, 0, 0}; }

TrapSpec TrapSpec::lattice(double v0, double phi, double half_width) {
  if (!(v0 >= 0.0) || !std::isfinite(v0)) {
    throw ValidationError("lattice depth v0 must be non-negative");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("lattice half_width must be positive");
  }
  if (!std::isfinite(phi)) {
    throw ValidationError("lattice phase phi must be finite");
  }
  return TrapSpec{TrapKind::Lattice, v0, phi, half_width};
}

TrapSpec TrapSpec::double_well() { return lattice(40.0, M_PI / 2.0, 2.5); }

TrapSpec TrapSpec::triple_well() { return lattice(40.0, 0.0, 3.5); }

namespace model {

double potential_eval(const TrapSpec& trap, double x) {
  if (trap.kind == TrapKind::Harmonic) return 0.5 * x * x;
  if (!trap.contains(x)) {
    throw ValidationError("potential_eval: x = " + std::to_string(x) +
                          " is outside the hard-wall box");
  }
  const double s = std::sin(M_PI * x / 2.0 + trap.phi);
  return trap.v0 * s * s;
}

std::vector<double> well_centers(const TrapSpec& trap) {
  if (trap.kind != TrapKind::Lattice) {
    throw ValidationError("well_centers: trap has no wells");
  }
  // Zeros of sin(pi x/2 + phi): x = 2m - 2 phi/pi. Enumerate the integers m
  // whose zero lands inside the box.
  const double offset = 2.0 * trap.phi / M_PI;
  std::vector<double> centers;
  const int m_lo = static_cast<int>(std::ceil((-trap.half_width + offset) / 2.0 - 1e-12));
  const int m_hi = static_cast<int>(std::floor((trap.half_width + offset) / 2.0 + 1e-12));
  for (int m = m_lo; m <= m_hi; ++m) {
    const double x = 2.0 * m - offset;
    if (x >= -trap.half_width - 1e-12 && x <= trap.half_width + 1e-12) {
      centers.push_back(x);
    }
  }
  return centers;
}

double e_tg(int n) {
  if (n < 1) throw ValidationError("e_tg: particle number must be >= 1");
  return 0.5 * static_cast<double>(n) * static_cast<double>(n);
}

double g1d_from_3d(double a_3d, double a_perp) {
  if (!(a_perp > 0.0)) {
    throw ValidationError("g1d_from_3d: transverse length must be positive");
  }
  // |zeta(1/2)|, the constant in the confinement-induced resonance condition.
  const double zeta_half_abs = 1.4603545088095868129;
  const double denom = 1.0 - zeta_half_abs * a_3d / (std::sqrt(2.0) * a_perp);
  if (std::abs(denom) < 1e-12) {
    throw NumericalError(
        "g1d_from_3d: at the confinement-induced resonance; g diverges");
  }
  return 2.0 * a_3d / (a_perp * a_perp) / denom;
}

}  // namespace model
}  // namespace qmc1d
