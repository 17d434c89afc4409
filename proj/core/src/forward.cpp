#include "nlscat/forward.hpp"

#include <cmath>
#include <limits>

#include "nlscat/errors.hpp"

namespace nlscat {
namespace {

using cplx = std::complex<double>;

bool tail_non_decreasing(const std::vector<double>& inc, int run) {
  if (static_cast<int>(inc.size()) < run) return false;
  for (size_t i = inc.size() - run + 1; i < inc.size(); ++i)
    if (!(inc[i] >= inc[i - 1])) return false;
  return true;
}

}  // namespace

FarFieldPattern::FarFieldPattern(int samples) : values(samples, cplx(0.0)) {
  if (samples < 2) throw InvariantViolation("FarFieldPattern: need at least 2 samples");
}

double FarFieldPattern::angle(int m) const { return 2.0 * M_PI * m / size(); }

Vec2 FarFieldPattern::direction(int m) const {
  double a = angle(m);
  return {std::cos(a), std::sin(a)};
}

double sup_norm(const FarFieldPattern& p) {
  double m = 0.0;
  for (const auto& v : p.values) m = std::max(m, std::abs(v));
  return m;
}

ComplexField incident_plane_wave(const Grid2D& grid, double k, double angle) {
  Vec2 d{std::cos(angle), std::sin(angle)};
  ComplexField u(grid.point_count());
  for (int f = 0; f < grid.point_count(); ++f) {
    double phase = k * dot(d, grid.point(f));
    u[f] = cplx(std::cos(phase), std::sin(phase));
  }
  return u;
}

ComplexField solve_linear(const ConvolutionKernel& kernel, const Contrast& contrast,
                          const ComplexField& incident, const LinearSolveConfig& lin) {
  if (!(contrast.grid() == kernel.grid()))
    throw InvariantViolation("solve_linear: contrast and kernel grids differ");
  const auto& q0 = contrast.linear_coefficient();
  const int n = kernel.grid().point_count();
  if (static_cast<int>(incident.size()) != n)
    throw InvariantViolation("solve_linear: incident field size does not match grid");

  ComplexField weighted(n);
  for (int f = 0; f < n; ++f) weighted[f] = q0[f] * incident[f];
  ComplexField rhs = kernel.apply_potential(weighted);
  return solve_linearized(kernel, q0, rhs, lin);
}

ForwardResult solve_nonlinear(const ConvolutionKernel& kernel, const Contrast& contrast,
                              const ComplexField& incident, const FixedPointConfig& fp,
                              const LinearSolveConfig& lin) {
  constexpr int kDivergenceRun = 5;
  constexpr double kZeroFloor = 1e-300;

  ForwardResult result;
  result.linear_scattered = solve_linear(kernel, contrast, incident, lin);

  const int n = kernel.grid().point_count();
  const auto& q0 = contrast.linear_coefficient();
  ComplexField base(n);
  for (int f = 0; f < n; ++f) base[f] = incident[f] + result.linear_scattered[f];

  ComplexField w(n, cplx(0.0)), total(n), density(n), rhs(n);
  auto ws = kernel.make_workspace();

  // Squared norms inside the Krylov solver overflow for fields near 1e154;
  // a diverging sweep is aborted well below that so the failure surfaces as
  // NoContraction instead of solver garbage.
  constexpr double kOverflowCeiling = 1e130;

  for (int sweep = 1; sweep <= fp.max_sweeps; ++sweep) {
    for (int f = 0; f < n; ++f) total[f] = base[f] + w[f];
    contrast.multiply_nonlinear(total, density);
    const double density_sup = sup_norm(density);
    if (!std::isfinite(density_sup) || density_sup > kOverflowCeiling) {
      result.increments.push_back(std::numeric_limits<double>::infinity());
      throw NoContraction("solve_nonlinear: iterate overflowed", result.increments);
    }
    kernel.apply_potential(density, rhs, *ws);
    ComplexField w_next = solve_linearized(kernel, q0, rhs, lin, nullptr, &w);

    result.sweeps = sweep;
    double num = sup_norm_diff(w_next, w);
    double den = sup_norm(w_next);
    if (!std::isfinite(num) || !std::isfinite(den)) {
      result.increments.push_back(std::numeric_limits<double>::infinity());
      throw NoContraction("solve_nonlinear: iterate overflowed", result.increments);
    }
    if (den < kZeroFloor) {
      // Nonlinear response below representable scale; the correction is zero.
      result.increments.push_back(0.0);
      result.correction = std::move(w_next);
      return result;
    }
    double inc = num / den;
    result.increments.push_back(inc);
    w = std::move(w_next);
    if (inc < fp.tolerance) {
      result.correction = std::move(w);
      return result;
    }
    if (tail_non_decreasing(result.increments, kDivergenceRun))
      throw NoContraction("solve_nonlinear: increments stopped decreasing", result.increments);
  }
  throw NoContraction("solve_nonlinear: sweep budget exhausted before contraction",
                      result.increments);
}

FarFieldPattern far_field(const Contrast& contrast, double k, const ComplexField& incident,
                          const ComplexField& linear_scattered, const ComplexField& correction,
                          int samples) {
  const Grid2D& grid = contrast.grid();
  const int n = grid.point_count();
  if (static_cast<int>(incident.size()) != n || static_cast<int>(linear_scattered.size()) != n ||
      static_cast<int>(correction.size()) != n)
    throw InvariantViolation("far_field: field sizes do not match grid");

  ComplexField total(n);
  for (int f = 0; f < n; ++f) total[f] = incident[f] + linear_scattered[f] + correction[f];
  ComplexField density(n);
  contrast.multiply_full(total, density);

  FarFieldPattern pattern(samples);
  const double weight = k * k * grid.step() * grid.step();
  for (int m = 0; m < samples; ++m) {
    Vec2 dir = pattern.direction(m);
    cplx acc = 0.0;
    for (int f : contrast.support().nodes()) {
      double phase = -k * dot(dir, grid.point(f));
      acc += density[f] * cplx(std::cos(phase), std::sin(phase));
    }
    pattern.values[m] = weight * acc;
  }
  return pattern;
}

}  // namespace nlscat
