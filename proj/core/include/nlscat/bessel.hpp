#pragma once

#include <complex>

namespace nlscat {

// Cylinder functions of order zero and one for real nonnegative argument.
//
// Accuracy targets: 1e-12 relative-or-absolute for J, 1e-10 for Y and the
// Hankel function, on [0, 500].  Two regimes: a compensated (double-double)
// ascending series below the crossover and the Hankel asymptotic expansion
// above it.  The plain double series loses too many digits to cancellation
// past x ~ 10 and the asymptotic series only closes the gap from x ~ 15 up,
// hence the compensated series and a crossover at 17.
double bessel_j0(double x);
double bessel_j1(double x);

// Weber functions; x must be strictly positive.
double bessel_y0(double x);
double bessel_y1(double x);

// Outgoing Hankel function H0^(1)(x) = J0(x) + i Y0(x); x must be strictly
// positive.
std::complex<double> hankel1_0(double x);

}  // namespace nlscat
