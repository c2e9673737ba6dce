#pragma once

namespace qmc1d::specfun {

// Gamma function on the real line. Throws NumericalError at the poles
// (non-positive integers) and on overflow (x > 171.6).
double gamma_real(double x);

// Reciprocal gamma 1/Gamma(x). Entire: returns 0 at the poles of Gamma, which
// is what the confluent connection formula needs at its removable points.
double rgamma(double x);

// Kummer's confluent hypergeometric M(a, b, z) by Taylor series with
// long double accumulation. Throws NumericalError if b is a non-positive
// integer or the series fails to converge within the term cap.
double kummer_m(double a, double b, double z);

// Tricomi U(a, 1/2, z) for a in [-1/2, 0] and z >= 0. This parameter range
// covers the repulsive pair branch: a = -nu/2 with nu in [0, 1].
double u_half(double a, double z);

// d/dz U(a, 1/2, z), computed as -a * U(a+1, 3/2, z). Returns +inf at z = 0
// for a < 0 (the derivative diverges like z^{-1/2} there) and 0 for a = 0.
double u_half_dz(double a, double z);

}  // namespace qmc1d::specfun
