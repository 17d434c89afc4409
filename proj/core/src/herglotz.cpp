#include "nlscat/herglotz.hpp"

#include <cmath>

#include "nlscat/errors.hpp"

namespace nlscat {
namespace {

using cplx = std::complex<double>;

void check_pairing(const Density& g, const AngularQuadrature& quad) {
  if (quad.nodes() < 2 * g.modes())
    throw InvariantViolation("density/quadrature pairing would alias: need M >= 2N");
}

}  // namespace

Density::Density(int modes) : coefficients(modes, cplx(0.0)) {
  if (modes < 2 || modes % 2 != 0)
    throw InvariantViolation("Density: mode count must be even and at least 2");
}

Density::Density(std::vector<cplx> coeffs) : coefficients(std::move(coeffs)) {
  if (coefficients.size() < 2 || coefficients.size() % 2 != 0)
    throw InvariantViolation("Density: mode count must be even and at least 2");
}

double Density::norm() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return std::sqrt(s);
}

void Density::scale(double s) {
  for (auto& c : coefficients) c *= s;
}

AngularQuadrature::AngularQuadrature(int nodes) : nodes_(nodes) {
  if (nodes < 2) throw InvariantViolation("AngularQuadrature: need at least 2 nodes");
}

Vec2 AngularQuadrature::direction(int m) const {
  double a = angle(m);
  return {std::cos(a), std::sin(a)};
}

cplx angular_inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b,
                           const AngularQuadrature& quad) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != quad.nodes())
    throw InvariantViolation("angular_inner_product: sample counts do not match quadrature");
  cplx s = 0.0;
  for (size_t m = 0; m < a.size(); ++m) s += a[m] * std::conj(b[m]);
  return quad.weight() * s;
}

std::vector<cplx> evaluate_density(const Density& g, const AngularQuadrature& quad) {
  check_pairing(g, quad);
  const double inv_root = 1.0 / std::sqrt(2.0 * M_PI);
  std::vector<cplx> values(quad.nodes(), cplx(0.0));
  for (int m = 0; m < quad.nodes(); ++m) {
    double t = quad.angle(m);
    cplx acc = 0.0;
    for (int idx = 0; idx < g.modes(); ++idx) {
      int n = g.min_mode() + idx;
      acc += g.coefficients[idx] * cplx(std::cos(n * t), std::sin(n * t));
    }
    values[m] = inv_root * acc;
  }
  return values;
}

ComplexField herglotz_field(const Density& g, const Grid2D& grid, double k,
                            const AngularQuadrature& quad) {
  std::vector<cplx> nodal = evaluate_density(g, quad);
  ComplexField field(grid.point_count(), cplx(0.0));
  for (int m = 0; m < quad.nodes(); ++m) {
    Vec2 theta = quad.direction(m);
    cplx gm = quad.weight() * nodal[m];
    for (int f = 0; f < grid.point_count(); ++f) {
      double phase = k * dot(theta, grid.point(f));
      field[f] += gm * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return field;
}

std::vector<cplx> herglotz_adjoint(const ComplexField& v, const SupportMask& mask, double k,
                                   const AngularQuadrature& quad) {
  const Grid2D& grid = mask.grid();
  if (v.size() != static_cast<size_t>(grid.point_count()))
    throw InvariantViolation("herglotz_adjoint: field size does not match grid");
  const double h2 = grid.step() * grid.step();
  std::vector<cplx> out(quad.nodes(), cplx(0.0));
  for (int m = 0; m < quad.nodes(); ++m) {
    Vec2 theta = quad.direction(m);
    cplx acc = 0.0;
    for (int f : mask.nodes()) {
      double phase = -k * dot(theta, grid.point(f));
      acc += v[f] * cplx(std::cos(phase), std::sin(phase));
    }
    out[m] = h2 * acc;
  }
  return out;
}

Scene::Scene(Contrast contrast, double wavenumber, int quadrature_nodes, int density_modes,
             FixedPointConfig fixed_point, LinearSolveConfig linear)
    : contrast_(std::move(contrast)),
      wavenumber_(wavenumber),
      quad_(quadrature_nodes),
      density_modes_(density_modes),
      fixed_point_(fixed_point),
      linear_(linear),
      kernel_(contrast_.grid(), wavenumber) {
  if (density_modes_ < 2 || density_modes_ % 2 != 0)
    throw InvariantViolation("Scene: density mode count must be even and at least 2");
  if (quad_.nodes() < 2 * density_modes_)
    throw InvariantViolation("Scene: quadrature nodes must be at least twice the mode count");

  // Herglotz image of each basis mode on the grid, by one pass over the
  // quadrature sharing the plane wave factors across modes.
  const Grid2D& g = grid();
  const int points = g.point_count();
  mode_table_.assign(static_cast<size_t>(density_modes_) * points, cplx(0.0));
  const double scale = quad_.weight() / std::sqrt(2.0 * M_PI);
  for (int m = 0; m < quad_.nodes(); ++m) {
    Vec2 theta = quad_.direction(m);
    double t = quad_.angle(m);
    for (int f = 0; f < points; ++f) {
      double phase = wavenumber_ * dot(theta, g.point(f));
      cplx wave = scale * cplx(std::cos(phase), std::sin(phase));
      for (int idx = 0; idx < density_modes_; ++idx) {
        int n = idx - density_modes_ / 2;
        mode_table_[static_cast<size_t>(idx) * points + f] +=
            wave * cplx(std::cos(n * t), std::sin(n * t));
      }
    }
  }
}

ComplexField Scene::herglotz(const Density& g) const {
  if (g.modes() != density_modes_)
    throw InvariantViolation("Scene::herglotz: density mode count does not match scene");
  const int points = grid().point_count();
  ComplexField field(points, cplx(0.0));
  for (int idx = 0; idx < density_modes_; ++idx) {
    cplx c = g.coefficients[idx];
    if (c == cplx(0.0)) continue;
    const cplx* row = &mode_table_[static_cast<size_t>(idx) * points];
    for (int f = 0; f < points; ++f) field[f] += c * row[f];
  }
  return field;
}

std::vector<cplx> Scene::mode_row(Vec2 z) const {
  const double scale = quad_.weight() / std::sqrt(2.0 * M_PI);
  std::vector<cplx> row(density_modes_, cplx(0.0));
  for (int m = 0; m < quad_.nodes(); ++m) {
    double t = quad_.angle(m);
    double phase = wavenumber_ * dot(quad_.direction(m), z);
    cplx wave = scale * cplx(std::cos(phase), std::sin(phase));
    for (int idx = 0; idx < density_modes_; ++idx) {
      int n = idx - density_modes_ / 2;
      row[idx] += wave * cplx(std::cos(n * t), std::sin(n * t));
    }
  }
  return row;
}

FarFieldPattern far_field_operator(const Density& g, const Scene& scene, ForwardResult* details) {
  ComplexField incident = scene.herglotz(g);
  ForwardResult fwd = solve_nonlinear(scene.kernel(), scene.contrast(), incident,
                                      scene.fixed_point(), scene.linear_solver());
  FarFieldPattern pattern = far_field(scene.contrast(), scene.wavenumber(), incident,
                                      fwd.linear_scattered, fwd.correction,
                                      scene.quadrature().nodes());
  if (details) *details = std::move(fwd);
  return pattern;
}

}  // namespace nlscat
