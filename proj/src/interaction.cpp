#include "qmc1d/interaction.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmc1d/errors.hpp"
#include "qmc1d/specfun.hpp"

namespace qmc1d {

Coupling Coupling::finite(double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw ValidationError("coupling must be finite and non-negative, got " +
                          std::to_string(g));
  }
  return Coupling{g, false};
}

Coupling Coupling::tonks() {
  return Coupling{std::numeric_limits<double>::infinity(), true};
}

namespace interaction {

double g_from_nu(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw ValidationError("g_from_nu: nu must lie in [0, 1]");
  }
  if (nu == 0.0) return 0.0;
  if (nu == 1.0) return std::numeric_limits<double>::infinity();
  // Equivalent to -2^{3/2} G((1-nu)/2) / G(-nu/2) after reflecting the
  // denominator; this form has no pole inside the interval.
  const double root8 = 2.8284271247461900976;  // 2^{3/2}
  return root8 * specfun::gamma_real(0.5 * (1.0 - nu)) *
         specfun::gamma_real(1.0 + 0.5 * nu) * std::sin(M_PI * nu / 2.0) /
         M_PI;
}

double nu_from_g(const Coupling& g) {
  if (g.infinite) return 1.0;
  if (g.value == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  // g_from_nu is strictly increasing with g(0) = 0 and g -> inf at nu = 1,
  // so the root is always bracketed. 80 halvings take the bracket width to
  // ~8e-25, well below double resolution of nu.
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (g_from_nu(mid) < g.value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double k_from_g(const Coupling& g, double period_l) {
  if (!(period_l > 0.0) || !std::isfinite(period_l)) {
    throw ValidationError("k_from_g: pair range L must be positive");
  }
  if (g.infinite) return M_PI / period_l;
  if (g.value == 0.0) return 0.0;
  // Solve theta tan(theta) = g L / 2 for theta = kL/2 in (0, pi/2); the
  // left side is strictly increasing and unbounded, so bisection applies.
  const double target = 0.5 * g.value * period_l;
  double lo = 0.0;
  double hi = M_PI / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid * std::tan(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / period_l;  // k = 2 theta / L
}

}  // namespace interaction
}  // namespace qmc1d
