#pragma once

#include <vector>

#include "nlscat/contrast.hpp"
#include "nlscat/forward.hpp"
#include "nlscat/geometry.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/ls_kernel.hpp"

namespace nlscat {

// Density on the unit circle, stored as Fourier coefficients for the
// orthonormal basis e^{i n t} / sqrt(2 pi), n = -N/2 .. N/2 - 1, N even.
class Density {
public:
  explicit Density(int modes);
  explicit Density(std::vector<std::complex<double>> coefficients);

  int modes() const { return static_cast<int>(coefficients.size()); }
  int min_mode() const { return -modes() / 2; }
  // L2(S^1) norm; the basis is orthonormal so this is the coefficient norm.
  double norm() const;
  void scale(double s);

  std::vector<std::complex<double>> coefficients;
};

// Uniform trapezoid quadrature on the circle: nodes 2 pi m / M with the
// constant weight 2 pi / M.  One instance serves density evaluation, the
// Herglotz pair, and far field sampling so the discrete factorization
// identity holds exactly.
class AngularQuadrature {
public:
  explicit AngularQuadrature(int nodes);

  int nodes() const { return nodes_; }
  double angle(int m) const { return 2.0 * M_PI * m / nodes_; }
  Vec2 direction(int m) const;
  double weight() const { return 2.0 * M_PI / nodes_; }

private:
  int nodes_;
};

// Trapezoid inner product <a, b> = w sum_m a_m conj(b_m) of nodal samples.
std::complex<double> angular_inner_product(const std::vector<std::complex<double>>& a,
                                           const std::vector<std::complex<double>>& b,
                                           const AngularQuadrature& quad);

// Nodal samples of the density at the quadrature angles.  Requires
// M >= 2 N so the basis modes stay alias free under the pairing.
std::vector<std::complex<double>> evaluate_density(const Density& g,
                                                   const AngularQuadrature& quad);

// Superposition of plane waves: (H g)(x) = sum_m w g(t_m) e^{i k x . theta_m}.
ComplexField herglotz_field(const Density& g, const Grid2D& grid, double k,
                            const AngularQuadrature& quad);

// Adjoint against the h^2-weighted pairing on the masked grid:
// (H* v)(theta_m) = h^2 sum_{y in D} v(y) e^{-i k theta_m . y}.
std::vector<std::complex<double>> herglotz_adjoint(const ComplexField& v, const SupportMask& mask,
                                                   double k, const AngularQuadrature& quad);

// Bundles everything one far field evaluation needs: medium, kernel,
// quadrature, solver settings, and a cached table of the Herglotz images of
// the basis modes on the grid.
class Scene {
public:
  Scene(Contrast contrast, double wavenumber, int quadrature_nodes, int density_modes,
        FixedPointConfig fixed_point = {}, LinearSolveConfig linear = {});

  const Grid2D& grid() const { return contrast_.grid(); }
  double wavenumber() const { return wavenumber_; }
  const Contrast& contrast() const { return contrast_; }
  const ConvolutionKernel& kernel() const { return kernel_; }
  const AngularQuadrature& quadrature() const { return quad_; }
  int density_modes() const { return density_modes_; }
  const FixedPointConfig& fixed_point() const { return fixed_point_; }
  const LinearSolveConfig& linear_solver() const { return linear_; }

  // Herglotz field through the cached mode table; g must carry the scene's
  // mode count.
  ComplexField herglotz(const Density& g) const;
  // Herglotz images of the basis modes at an arbitrary point: row[n] such
  // that (H g)(z) = sum_n g_n row[n].  This is also the conjugated pairing
  // <g, phi_z> with the point sampling function phi_z = e^{-i k z . theta}.
  std::vector<std::complex<double>> mode_row(Vec2 z) const;

private:
  Contrast contrast_;
  double wavenumber_;
  AngularQuadrature quad_;
  int density_modes_;
  FixedPointConfig fixed_point_;
  LinearSolveConfig linear_;
  ConvolutionKernel kernel_;
  std::vector<std::complex<double>> mode_table_;  // [mode][node], node fastest
};

// The nonlinear far field operator F: runs the fixed point forward solve for
// the Herglotz incident field of g and samples the far field at the scene's
// quadrature angles.  Propagates NoContraction when g lies outside the
// contraction regime.  `details`, when given, receives the forward solve.
FarFieldPattern far_field_operator(const Density& g, const Scene& scene,
                                   ForwardResult* details = nullptr);

}  // namespace nlscat
