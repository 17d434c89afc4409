#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "nlscat/bessel.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/herglotz.hpp"
#include "nlscat/rng.hpp"
#include "support.hpp"

using namespace nlscat;
using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

Density random_density(int modes, uint64_t seed) {
  SplitMix64 rng(seed);
  Density g(modes);
  for (auto& c : g.coefficients) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return g;
}

ComplexField random_field(int size, uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexField v(size);
  for (auto& c : v) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("density stores symmetric mode windows") {
  Density g(8);
  CHECK(g.modes() == 8);
  CHECK(g.min_mode() == -4);
  CHECK(g.norm() == 0.0);

  g.coefficients[0] = cplx(3.0, 0.0);
  g.coefficients[5] = cplx(0.0, -4.0);
  CHECK(g.norm() == doctest::Approx(5.0));

  g.scale(0.5);
  CHECK(g.norm() == doctest::Approx(2.5));
  CHECK(g.coefficients[0] == cplx(1.5, 0.0));

  CHECK_THROWS_AS(Density(3), InvariantViolation);
  CHECK_THROWS_AS(Density(0), InvariantViolation);
  CHECK_THROWS_AS(Density(std::vector<cplx>{cplx(1.0)}), InvariantViolation);
}

TEST_CASE("angular quadrature is the uniform circle rule") {
  AngularQuadrature quad(16);
  CHECK(quad.nodes() == 16);
  CHECK(quad.weight() == doctest::Approx(kTwoPi / 16.0));
  CHECK(quad.angle(4) == doctest::Approx(kTwoPi / 4.0));
  CHECK(quad.direction(8).x == doctest::Approx(-1.0));
  CHECK(quad.direction(8).y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(AngularQuadrature(1), InvariantViolation);

  SUBCASE("rule integrates low order modes exactly") {
    // sum w e^{i n t_m} = 2 pi delta_{n0} for |n| < M.
    for (int n = -7; n <= 7; ++n) {
      cplx acc = 0.0;
      for (int m = 0; m < quad.nodes(); ++m) {
        double t = quad.angle(m);
        acc += quad.weight() * cplx(std::cos(n * t), std::sin(n * t));
      }
      if (n == 0)
        CHECK(std::abs(acc - cplx(kTwoPi / 16.0 * 16.0)) < 1e-12);
      else
        CHECK(std::abs(acc) < 1e-12);
    }
  }
}

TEST_CASE("basis modes are orthonormal under the discrete pairing") {
  const AngularQuadrature quad(8);
  std::vector<std::vector<cplx>> nodal;
  for (int idx = 0; idx < 4; ++idx) {
    Density g(4);
    g.coefficients[idx] = 1.0;
    nodal.push_back(evaluate_density(g, quad));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const cplx p = angular_inner_product(nodal[a], nodal[b], quad);
      const cplx want = (a == b) ? cplx(1.0) : cplx(0.0);
      CHECK(std::abs(p - want) < 1e-13);
    }
}

TEST_CASE("density evaluation matches the defining sum") {
  const AngularQuadrature quad(12);
  const Density g = random_density(4, 77);
  const auto nodal = evaluate_density(g, quad);
  REQUIRE(static_cast<int>(nodal.size()) == 12);
  for (int m = 0; m < 12; ++m) {
    const double t = quad.angle(m);
    cplx want = 0.0;
    for (int idx = 0; idx < 4; ++idx) {
      const int n = idx - 2;
      want += g.coefficients[idx] * cplx(std::cos(n * t), std::sin(n * t));
    }
    want /= std::sqrt(kTwoPi);
    CHECK(std::abs(nodal[m] - want) < 1e-14);
  }

  SUBCASE("aliasing guard") {
    const Density wide = random_density(8, 5);
    CHECK_THROWS_AS(evaluate_density(wide, AngularQuadrature(15)), InvariantViolation);
    CHECK_NOTHROW(evaluate_density(wide, AngularQuadrature(16)));
  }
}

TEST_CASE("constant density generates the radial Bessel profile") {
  // g = sqrt(2 pi) on the zeroth basis mode integrates plane waves over all
  // directions: (H g)(x) = 2 pi J0(k |x|).  A 256 node rule leaves only
  // spectral quadrature error.
  const Grid2D grid(2.0, 5);
  const double k = 1.3;
  const AngularQuadrature quad(256);
  Density g(2);
  g.coefficients[1] = std::sqrt(kTwoPi);  // mode n = 0 sits at index N/2

  const ComplexField field = herglotz_field(g, grid, k, quad);
  for (int f = 0; f < grid.point_count(); ++f) {
    const double r = grid.point(f).norm();
    const cplx want = cplx(kTwoPi * bessel_j0(k * r), 0.0);
    CHECK(std::abs(field[f] - want) < 1e-8);
  }
}

TEST_CASE("first harmonic generates the rotating Bessel profile") {
  // Mode n: (H e_n)(x) = sqrt(2 pi) i^n J_n(k |x|) e^{i n phi}.
  const Grid2D grid(2.0, 5);
  const double k = 0.9;
  const AngularQuadrature quad(256);
  Density g(4);
  g.coefficients[2 + 1] = 1.0;  // n = +1 sits at min_mode offset 2 + 1

  const ComplexField field = herglotz_field(g, grid, k, quad);
  for (int f = 0; f < grid.point_count(); ++f) {
    const Vec2 x = grid.point(f);
    const double r = x.norm();
    const double phi = std::atan2(x.y, x.x);
    const cplx want = std::sqrt(kTwoPi) * cplx(0.0, 1.0) * bessel_j1(k * r) *
                      cplx(std::cos(phi), std::sin(phi));
    CHECK(std::abs(field[f] - want) < 1e-8);
  }
}

TEST_CASE("herglotz pair is adjoint under the discrete pairings") {
  const Grid2D grid(5.0, 10);
  const double k = 1.0;
  const AngularQuadrature quad(32);
  const SupportMask mask = rasterize(Shape::disk({0.0, 0.0}, 1.0), grid);

  const Density g = random_density(8, 3);
  const ComplexField v = random_field(grid.point_count(), 4);

  // <H g, v> over the masked grid with the h^2 weight...
  const ComplexField hg = herglotz_field(g, grid, k, quad);
  const double h2 = grid.step() * grid.step();
  cplx lhs = 0.0;
  for (int f : mask.nodes()) lhs += hg[f] * std::conj(v[f]);
  lhs *= h2;

  // ... equals <g, H* v> on the circle.
  const auto nodal = evaluate_density(g, quad);
  const auto adj = herglotz_adjoint(v, mask, k, quad);
  const cplx rhs = angular_inner_product(nodal, adj, quad);

  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

  SUBCASE("adjoint rejects mismatched fields") {
    const ComplexField bad(grid.point_count() - 1, cplx(0.0));
    CHECK_THROWS_AS(herglotz_adjoint(bad, mask, k, quad), InvariantViolation);
  }
}

TEST_CASE("scene mode table reproduces the direct herglotz field") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::disk_contrast(grid, 1.16, 0.26);
  const Scene scene(c, 1.0, 32, 8);
  const Density g = random_density(8, 11);

  const ComplexField via_table = scene.herglotz(g);
  const ComplexField direct = herglotz_field(g, grid, 1.0, scene.quadrature());
  CHECK(sup_norm_diff(via_table, direct) < 1e-11);

  SUBCASE("mode rows evaluate the field pointwise") {
    for (int f = 0; f < grid.point_count(); f += 37) {
      const auto row = scene.mode_row(grid.point(f));
      cplx acc = 0.0;
      for (int idx = 0; idx < 8; ++idx) acc += g.coefficients[idx] * row[idx];
      CHECK(std::abs(acc - via_table[f]) < 1e-11);
    }
  }

  SUBCASE("density mode mismatch is rejected") {
    CHECK_THROWS_AS(scene.herglotz(Density(6)), InvariantViolation);
  }

  SUBCASE("aliasing quadrature is rejected at construction") {
    CHECK_THROWS_AS(Scene(c, 1.0, 15, 8), InvariantViolation);
    CHECK_THROWS_AS(Scene(c, 1.0, 32, 7), InvariantViolation);
  }
}

TEST_CASE("linear far field operator factorizes through the herglotz pair") {
  // For a linear medium F g = k^2 H* [ q0 (I + L) H g ] with L the linear
  // scattering solve; the operator code assembles exactly this chain, so the
  // two evaluations agree to solver precision.  k != 1 keeps the k^2 factor
  // honest.
  const Grid2D grid(5.0, 10);
  const double k = 1.3;
  const Contrast c = testsupport::disk_contrast(grid, 1.16);
  const Scene scene(c, k, 16, 4);
  const Density g = random_density(4, 21);

  const FarFieldPattern via_operator = far_field_operator(g, scene);

  const ComplexField incident = scene.herglotz(g);
  const ComplexField u0s = solve_linear(scene.kernel(), c, incident, scene.linear_solver());
  ComplexField total(grid.point_count());
  for (int f = 0; f < grid.point_count(); ++f) total[f] = incident[f] + u0s[f];
  ComplexField density(grid.point_count());
  c.multiply_full(total, density);
  const auto adj = herglotz_adjoint(density, c.support(), k, scene.quadrature());

  REQUIRE(via_operator.size() == 16);
  const double scale = sup_norm(via_operator);
  REQUIRE(scale > 0.0);
  for (int m = 0; m < 16; ++m)
    CHECK(std::abs(via_operator.values[m] - k * k * adj[m]) <= 1e-9 * scale);
}

TEST_CASE("linear far field obeys reciprocity") {
  // v(xhat; d) = v(-d; -xhat) for any linear medium.  A kite shifted off
  // both axes leaves no mirror symmetry that could fake the identity.
  const Grid2D grid(5.0, 10);
  const SupportMask mask = rasterize(Shape::kite({0.3, 0.7}, 1.0), grid);
  RealField q0(grid.point_count(), 0.0);
  for (int f : mask.nodes()) q0[f] = 1.16;
  const Contrast c(grid, {{std::move(q0), 0.0}});
  const ConvolutionKernel kernel(grid, 1.0);
  const int M = 16;

  auto far_from_angle_index = [&](int md) {
    const double angle = kTwoPi * md / M;
    const ComplexField ui = incident_plane_wave(grid, 1.0, angle);
    const ComplexField u0s = solve_linear(kernel, c, ui, {});
    const ComplexField zero(grid.point_count(), cplx(0.0));
    return far_field(c, 1.0, ui, u0s, zero, M);
  };

  const int md = 5, mx = 11;
  const FarFieldPattern from_d = far_from_angle_index(md);
  const FarFieldPattern from_minus_x = far_from_angle_index((mx + M / 2) % M);

  const cplx lhs = from_d.values[mx];
  const cplx rhs = from_minus_x.values[(md + M / 2) % M];
  CHECK(std::abs(lhs) > 1e-3);
  CHECK(std::abs(lhs - rhs) <= 1e-7 * std::abs(lhs));
}
