#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>

#include "nlscat/bessel.hpp"

using namespace nlscat;

namespace {

// 20-digit reference values from an arbitrary-precision series evaluation,
// spanning both sides of the series/asymptotic crossover.
struct Reference {
  double x, j0, y0, j1, y1;
};

constexpr Reference kTable[] = {
    {0.5, 9.38469807240812858851e-01, -4.44518733506706564818e-01, 2.42268457674873899377e-01,
     -1.47147239267024310116e+00},
    {1, 7.65197686557966605392e-01, 8.82569642156769557095e-02, 4.40050585744933497878e-01,
     -7.81212821300288684512e-01},
    {2.4048255576957729, -1.20119500736768582556e-16, 5.09924383448479012770e-01,
     5.19147497289466741677e-01, 1.02746682438259642756e-01},
    {5, -1.77596771314338292003e-01, -3.08517625249033755619e-01, -3.27579137591465230361e-01,
     1.47863143391226831147e-01},
    {7.9000000000000004, 1.94361844841278330609e-01, 2.06520948144375715572e-01,
     2.19179399921751144609e-01, -1.81721077280573212187e-01},
    {8.0999999999999996, 1.47517454044377577249e-01, 2.38091328702234844572e-01,
     2.47607766981592924971e-01, -1.33148795952495846429e-01},
    {12, 4.76893107968335352997e-02, -2.25237312634361447339e-01, -2.23447104490627601603e-01,
     -5.70992182608965198609e-02},
    {16, -1.74899073983629194107e-01, 9.58109970807124039505e-02, 9.03971756613041882433e-02,
     1.77975168939416866776e-01},
    {17.100000000000001, -1.59285331532265456156e-01, -1.08819047300429766478e-01,
     -1.13518848291434923392e-01, 1.56173913148365012260e-01},
    {25, 9.62667832759581121316e-02, -1.27249432268006140712e-01, -1.25350249580289896389e-01,
     -9.88299647832374117407e-02},
    {100, 1.99858503042231218372e-02, -7.72443133650831531556e-02, -7.71453520141121562581e-02,
     -2.03723120027597924542e-02},
    {250, -2.60533734252042341317e-02, -4.32168454403662680163e-02, -4.32690384103307512653e-02,
     2.59669921854845837939e-02},
    {500, -3.41005568807319983660e-02, 1.05067087398313732671e-02, 1.04726134703722936065e-02,
     3.41110806291371332355e-02},
};

}  // namespace

TEST_CASE("cylinder functions match the reference table to 1e-12 absolute") {
  for (const Reference& r : kTable) {
    CAPTURE(r.x);
    CHECK(std::abs(bessel_j0(r.x) - r.j0) <= 1e-12);
    CHECK(std::abs(bessel_y0(r.x) - r.y0) <= 1e-12);
    CHECK(std::abs(bessel_j1(r.x) - r.j1) <= 1e-12);
    CHECK(std::abs(bessel_y1(r.x) - r.y1) <= 1e-12);
  }
}

TEST_CASE("values at the origin") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
}

TEST_CASE("first zero of J0") {
  // Reference root of J0 to machine precision.
  const double root = 2.4048255576957727686;
  CHECK(std::abs(bessel_j0(root)) <= 1e-10);
  // Sign change brackets the root.
  CHECK(bessel_j0(root - 1e-6) * bessel_j0(root + 1e-6) < 0.0);
}

TEST_CASE("H0 is J0 + i Y0 and purely imaginary at the J0 zero") {
  const std::complex<double> h = hankel1_0(2.404825557695773);
  CHECK(std::abs(h.real()) <= 1e-9);
  for (double x : {0.1, 1.0, 3.0, 10.0, 30.0}) {
    const std::complex<double> v = hankel1_0(x);
    CHECK(v.real() == bessel_j0(x));
    CHECK(v.imag() == bessel_y0(x));
  }
}

TEST_CASE("Wronskian J1 Y0 - J0 Y1 = 2/(pi x)") {
  // Cross-validates all four kernels at once, including across the
  // series/asymptotic crossover.
  for (double x = 0.05; x < 40.0; x *= 1.17) {
    const double w = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x);
    const double exact = 2.0 / (M_PI * x);
    CHECK(std::abs(w - exact) <= 1e-13 * std::abs(exact) + 1e-15);
  }
}

TEST_CASE("small-argument logarithmic behavior of Y0") {
  // Y0(x) ~ (2/pi)(ln(x/2) + gamma) J0(x) for x -> 0.
  const double x = 1e-8;
  const double gamma = 0.57721566490153286;
  const double expected = 2.0 / M_PI * (std::log(x / 2.0) + gamma);
  CHECK(std::abs(bessel_y0(x) - expected) <= 1e-12);
}

TEST_CASE("continuity across the series/asymptotic crossover") {
  // The evaluation switches representation near x = 17; both branches must
  // agree to close to machine precision there.
  const double below = std::nextafter(17.0, 0.0);
  const double above = std::nextafter(17.0, 100.0);
  CHECK(std::abs(bessel_j0(below) - bessel_j0(above)) <= 1e-13);
  CHECK(std::abs(bessel_y0(below) - bessel_y0(above)) <= 1e-13);
  CHECK(std::abs(bessel_j1(below) - bessel_j1(above)) <= 1e-13);
  CHECK(std::abs(bessel_y1(below) - bessel_y1(above)) <= 1e-13);
}

TEST_CASE("domain violations throw") {
  CHECK_THROWS_AS(bessel_j0(-1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y0(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y0(-2.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y1(0.0), std::domain_error);
  CHECK_THROWS_AS(hankel1_0(0.0), std::domain_error);
}
