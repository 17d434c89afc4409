#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "nlscat/disk_reference.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/forward.hpp"
#include "support.hpp"

using namespace nlscat;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("far field pattern angles cover the circle uniformly") {
  FarFieldPattern p(8);
  CHECK(p.size() == 8);
  CHECK(p.angle(0) == 0.0);
  CHECK(p.angle(2) == doctest::Approx(kPi / 2.0));
  CHECK(p.direction(0).x == doctest::Approx(1.0));
  CHECK(p.direction(0).y == doctest::Approx(0.0));
  CHECK(p.direction(6).y == doctest::Approx(-1.0));

  p.values[3] = cplx(3.0, -4.0);
  CHECK(sup_norm(p) == doctest::Approx(5.0));

  CHECK_THROWS_AS(FarFieldPattern(1), InvariantViolation);
}

TEST_CASE("plane wave has unit modulus and the expected phase") {
  const Grid2D grid(2.0, 4);
  const double k = 1.7;
  const ComplexField u = incident_plane_wave(grid, k, 0.0);
  REQUIRE(static_cast<int>(u.size()) == grid.point_count());
  for (const cplx& v : u) CHECK(std::abs(v) == doctest::Approx(1.0));

  // Direction (1, 0): phase is k * x, independent of y.
  for (int j = -4; j <= 4; ++j) {
    const int f = grid.index(2, j);
    const double phase = k * 2.0 * grid.step();
    CHECK(u[f].real() == doctest::Approx(std::cos(phase)));
    CHECK(u[f].imag() == doctest::Approx(std::sin(phase)));
  }

  // Oblique direction picks up both coordinates.
  const double a = 2.0 * kPi / 3.0;
  const ComplexField v = incident_plane_wave(grid, k, a);
  const int f = grid.index(1, -2);
  const Vec2 x = grid.point(f);
  const double phase = k * (std::cos(a) * x.x + std::sin(a) * x.y);
  CHECK(v[f].real() == doctest::Approx(std::cos(phase)));
  CHECK(v[f].imag() == doctest::Approx(std::sin(phase)));
}

TEST_CASE("zero contrast scatters nothing") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::disk_contrast(grid, 0.0);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);
  const ComplexField u0s = solve_linear(kernel, c, ui, {});
  CHECK(sup_norm(u0s) == 0.0);
}

TEST_CASE("linear law makes the nonlinear correction vanish") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::disk_contrast(grid, 1.16);
  REQUIRE(c.is_linear());
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);

  const ForwardResult r = solve_nonlinear(kernel, c, ui, {}, {});
  CHECK(r.sweeps == 1);
  REQUIRE(r.increments.size() == 1);
  CHECK(r.increments[0] == 0.0);
  CHECK(sup_norm(r.correction) == 0.0);

  // The embedded linear solve matches the standalone one.
  const ComplexField u0s = solve_linear(kernel, c, ui, {});
  CHECK(sup_norm_diff(r.linear_scattered, u0s) <= 1e-12);
}

TEST_CASE("linear disk solve agrees with the transmission series") {
  // Coarse grid: the cubature converges like h^2 up to logs, so the
  // tolerance here is loose; the acceptance suite tightens it on finer
  // grids and checks the convergence ratio.
  const Grid2D grid(5.0, 10);
  const double k = 1.0, q0 = 1.16;
  const Contrast c = testsupport::disk_contrast(grid, q0);
  const ConvolutionKernel kernel(grid, k);
  const ComplexField ui = incident_plane_wave(grid, k, 0.0);
  const ComplexField u0s = solve_linear(kernel, c, ui, {});

  const DiskScattering oracle(k, q0, 1.0);
  double err = 0.0, scale = 0.0;
  for (int f = 0; f < grid.point_count(); ++f) {
    const cplx ref = oracle.scattered_field(grid.point(f), 0.0);
    err = std::max(err, std::abs(u0s[f] - ref));
    scale = std::max(scale, std::abs(ref));
  }
  REQUIRE(scale > 0.1);
  CHECK(err / scale < 0.15);
}

TEST_CASE("kite scene fixed point contracts") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::kite_contrast(grid, 1.16, 0.26);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);

  const FixedPointConfig fp;  // tolerance 1e-5
  const ForwardResult r = solve_nonlinear(kernel, c, ui, fp, {});

  CHECK(r.sweeps <= 30);
  REQUIRE(!r.increments.empty());
  CHECK(r.increments.back() < fp.tolerance);
  CHECK(sup_norm(r.correction) > 0.0);
  // The correction stays a correction: well below the linear response.
  CHECK(sup_norm(r.correction) < sup_norm(r.linear_scattered));

  SUBCASE("increments decay geometrically in the tail") {
    for (size_t i = r.increments.size() / 2; i + 1 < r.increments.size(); ++i)
      CHECK(r.increments[i + 1] < 0.9 * r.increments[i]);
  }

  SUBCASE("repeat solve is reproducible") {
    const ForwardResult r2 = solve_nonlinear(kernel, c, ui, fp, {});
    CHECK(r2.sweeps == r.sweeps);
    CHECK(sup_norm_diff(r2.correction, r.correction) <= 1e-13);
  }
}

TEST_CASE("correction scales like the cube of the incident amplitude") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::disk_contrast(grid, 1.16, 0.26);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);

  auto correction_norm = [&](double amplitude) {
    ComplexField scaled = ui;
    for (cplx& v : scaled) v *= amplitude;
    // Small-amplitude corrections need a tolerance below their own size.
    FixedPointConfig fp;
    fp.tolerance = 1e-8;
    return sup_norm(solve_nonlinear(kernel, c, scaled, fp, {}).correction);
  };

  const double w1 = correction_norm(0.25);
  const double w2 = correction_norm(0.125);
  REQUIRE(w2 > 0.0);
  const double exponent = std::log2(w1 / w2);
  CHECK(exponent > 2.7);
  CHECK(exponent < 3.3);
}

TEST_CASE("axisymmetric scene yields a reflection symmetric far field") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::disk_contrast(grid, 1.16, 0.26);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);

  const ForwardResult r = solve_nonlinear(kernel, c, ui, {}, {});
  const FarFieldPattern p = far_field(c, 1.0, ui, r.linear_scattered, r.correction, 32);
  REQUIRE(p.size() == 32);
  CHECK(sup_norm(p) > 1e-3);

  // Incidence along +x over a disk centred at the origin: the geometry is
  // mirror symmetric about the x axis, so v(angle) = v(-angle).
  for (int m = 1; m < 16; ++m)
    CHECK(std::abs(p.values[m] - p.values[32 - m]) <= 1e-6 * sup_norm(p));
}

TEST_CASE("far field rejects mismatched field sizes") {
  const Grid2D grid(2.0, 4);
  const Contrast c = testsupport::disk_contrast(grid, 0.5, 0.0, 1.0);
  const ComplexField good(grid.point_count(), cplx(0.0));
  const ComplexField bad(grid.point_count() - 1, cplx(0.0));
  CHECK_THROWS_AS(far_field(c, 1.0, bad, good, good, 8), InvariantViolation);
  CHECK_THROWS_AS(far_field(c, 1.0, good, bad, good, 8), InvariantViolation);
  CHECK_THROWS_AS(far_field(c, 1.0, good, good, bad, 8), InvariantViolation);
}

TEST_CASE("amplified incidence breaks the contraction and reports history") {
  const Grid2D grid(5.0, 10);
  const Contrast c = testsupport::kite_contrast(grid, 1.16, 0.26);
  const ConvolutionKernel kernel(grid, 1.0);
  ComplexField ui = incident_plane_wave(grid, 1.0, 0.0);
  for (cplx& v : ui) v *= 1e4;

  bool thrown = false;
  try {
    solve_nonlinear(kernel, c, ui, {}, {});
  } catch (const NoContraction& e) {
    thrown = true;
    REQUIRE(e.increments.size() >= 2);
    CHECK(static_cast<int>(e.increments.size()) <= 100);
    // Divergence signature: the tail stopped decreasing.
    const size_t last = e.increments.size() - 1;
    CHECK(e.increments[last] >= e.increments[last - 1]);
  }
  CHECK(thrown);
}
