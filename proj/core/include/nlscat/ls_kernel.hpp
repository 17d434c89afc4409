#pragma once

#include <memory>

#include "nlscat/gmres.hpp"
#include "nlscat/grid.hpp"

namespace nlscat {

// Smallest integer >= n with no prime factor larger than 5.
int next_smooth_size(int n);

// Discrete volume potential f |-> k^2 (Phi_k * f) on a Grid2D, where Phi_k is
// the outgoing 2D fundamental solution (i/4) H0^(1)(k|x|).  Nystrom cubature
// on the grid cells: off-diagonal weights are h^2 Phi_k at the lag, the
// zero-lag weight is the analytic integral of Phi_k over one cell (the
// logarithmic part in closed form, the remainder from the two leading series
// terms).  The lattice convolution is evaluated by FFT on a doubled,
// 5-smooth-sized period so it is exact for the truncated kernel.
class ConvolutionKernel {
public:
  ConvolutionKernel(const Grid2D& grid, double wavenumber);
  ~ConvolutionKernel();
  ConvolutionKernel(ConvolutionKernel&&) noexcept;
  ConvolutionKernel& operator=(ConvolutionKernel&&) noexcept;
  ConvolutionKernel(const ConvolutionKernel&) = delete;
  ConvolutionKernel& operator=(const ConvolutionKernel&) = delete;

  const Grid2D& grid() const;
  double wavenumber() const;
  int fft_size() const;

  // Fourier multipliers on the doubled grid, scaled by the cubature weight
  // h^2 and the inverse-transform normalization.  Row-major fft_size^2.
  const ComplexField& multiplier() const;

  // Scratch buffers for one concurrent apply stream.  Reuse across calls on
  // the same thread; never share one workspace between threads.
  class Workspace;
  struct WorkspaceDeleter {
    void operator()(Workspace* ws) const;
  };
  using WorkspacePtr = std::unique_ptr<Workspace, WorkspaceDeleter>;
  WorkspacePtr make_workspace() const;

  void apply_potential(const ComplexField& f, ComplexField& out, Workspace& ws) const;
  ComplexField apply_potential(const ComplexField& f) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Solves the linearized Lippmann-Schwinger system
//   u - k^2 Phi_k * (q0 u) = rhs
// with restarted GMRES.  q0 and rhs live on the kernel's grid; x0, when
// given, seeds the iteration.  Throws NoConvergence when the iteration budget
// is exhausted before the true relative residual reaches the tolerance.
ComplexField solve_linearized(const ConvolutionKernel& kernel, const RealField& q0,
                              const ComplexField& rhs, const LinearSolveConfig& config,
                              SolveStats* stats = nullptr, const ComplexField* x0 = nullptr);

}  // namespace nlscat
