#pragma once

#include <vector>

#include "nlscat/contrast.hpp"
#include "nlscat/gmres.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/ls_kernel.hpp"

namespace nlscat {

struct FixedPointConfig {
  double tolerance = 1e-5;  // relative sup-norm increment target
  int max_sweeps = 100;
};

struct ForwardResult {
  ComplexField linear_scattered;  // scattered field of the linearized medium
  ComplexField correction;        // nonlinear correction w
  int sweeps = 0;
  std::vector<double> increments;  // relative increment per sweep
};

// Far field samples at the uniform angles 2 pi m / M, m = 0..M-1.
struct FarFieldPattern {
  explicit FarFieldPattern(int samples);

  int size() const { return static_cast<int>(values.size()); }
  double angle(int m) const;
  Vec2 direction(int m) const;

  std::vector<std::complex<double>> values;
};

double sup_norm(const FarFieldPattern& p);

// Plane wave e^{i k d . x} with direction angle in radians.
ComplexField incident_plane_wave(const Grid2D& grid, double k, double angle);

// Scattered field of the linearized medium: solves
//   u0s - k^2 Phi * (q0 u0s) = k^2 Phi * (q0 ui).
ComplexField solve_linear(const ConvolutionKernel& kernel, const Contrast& contrast,
                          const ComplexField& incident, const LinearSolveConfig& lin);

// Banach fixed point for the nonlinear correction w:
//   w_{l+1} = (I - k^2 Phi q0)^{-1} k^2 Phi [ q_N(., |w_l + u0s + ui|) (w_l + u0s + ui) ],
// starting from w_0 = 0 and stopping when the relative sup-norm increment
// drops below the tolerance.  Five consecutive non-decreasing increments (or
// a non-finite iterate) raise NoContraction with the increment history.
ForwardResult solve_nonlinear(const ConvolutionKernel& kernel, const Contrast& contrast,
                              const ComplexField& incident, const FixedPointConfig& fp,
                              const LinearSolveConfig& lin);

// Far field of the total field u = ui + u0s + w:
//   v(m) = k^2 h^2 sum_{y in D} q(y, |u(y)|) u(y) e^{-i k x_m . y}.
FarFieldPattern far_field(const Contrast& contrast, double k, const ComplexField& incident,
                          const ComplexField& linear_scattered, const ComplexField& correction,
                          int samples);

}  // namespace nlscat
