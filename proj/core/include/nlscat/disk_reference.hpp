#pragma once

#include <complex>
#include <vector>

#include "nlscat/grid.hpp"

namespace nlscat {

// Separation-of-variables transmission solution for a plane wave hitting a
// homogeneous disk of contrast q0 centered at the origin: an independent
// reference for the integral-equation solver.  Interior modes use the shifted
// wavenumber k sqrt(1 + q0).
class DiskScattering {
public:
  // max_order modes (plus mode zero); order 40 covers |arguments| up to ~10
  // far beyond double precision.
  DiskScattering(double wavenumber, double contrast, double radius, int max_order = 40);

  double wavenumber() const { return k_; }
  double interior_wavenumber() const { return k_interior_; }
  double radius() const { return radius_; }

  // Total field at x for a unit plane wave from the given direction angle.
  std::complex<double> total_field(Vec2 x, double incident_angle = 0.0) const;
  // Scattered field (total minus incident), valid inside and outside.
  std::complex<double> scattered_field(Vec2 x, double incident_angle = 0.0) const;

  ComplexField total_field_on_grid(const Grid2D& grid, double incident_angle = 0.0) const;
  ComplexField scattered_field_on_grid(const Grid2D& grid, double incident_angle = 0.0) const;

private:
  double k_;
  double k_interior_;
  double radius_;
  std::vector<std::complex<double>> interior_;   // a_n, n = 0..max_order
  std::vector<std::complex<double>> scattered_;  // b_n, n = 0..max_order
};

// Regular Bessel function of integer order n >= 0 by its ascending series;
// accurate to ~1e-13 relative for arguments up to ~10.
double bessel_jn_series(int n, double x);

// Y_n for n >= 0 by upward recurrence from the order 0 and 1 kernels;
// requires x > 0.
double bessel_yn_recurrence(int n, double x);

}  // namespace nlscat
