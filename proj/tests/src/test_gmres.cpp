#include <complex>
#include <vector>

#include <doctest.h>

#include "nlscat/errors.hpp"
#include "nlscat/gmres.hpp"
#include "nlscat/rng.hpp"

using namespace nlscat;
using cplx = std::complex<double>;

namespace {

// Dense matrix apply for small reference systems.
LinearOperator dense_op(const std::vector<cplx>& a, int n) {
  return [a, n](const std::vector<cplx>& x, std::vector<cplx>& y) {
    for (int r = 0; r < n; ++r) {
      cplx s = 0.0;
      for (int c = 0; c < n; ++c) s += a[r * n + c] * x[c];
      y[r] = s;
    }
  };
}

// Well-conditioned random system: identity plus a small random perturbation.
std::vector<cplx> random_system(int n, uint64_t seed, double offdiag = 0.2) {
  SplitMix64 rng(seed);
  std::vector<cplx> a(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      a[r * n + c] = offdiag * cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) / double(n);
      if (r == c) a[r * n + c] += 1.0;
    }
  return a;
}

double residual_norm(const std::vector<cplx>& a, int n, const std::vector<cplx>& x,
                     const std::vector<cplx>& b) {
  double s = 0.0, bs = 0.0;
  for (int r = 0; r < n; ++r) {
    cplx ax = 0.0;
    for (int c = 0; c < n; ++c) ax += a[r * n + c] * x[c];
    s += std::norm(ax - b[r]);
    bs += std::norm(b[r]);
  }
  return std::sqrt(s / bs);
}

}  // namespace

TEST_CASE("solves a random well-conditioned complex system to tolerance") {
  const int n = 60;
  const auto a = random_system(n, 1);
  SplitMix64 rng(2);
  std::vector<cplx> b(n);
  for (auto& v : b) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));

  std::vector<cplx> x(n, 0.0);
  LinearSolveConfig cfg;
  cfg.tolerance = 1e-12;
  SolveStats stats = gmres(dense_op(a, n), b, x, cfg);
  CHECK(residual_norm(a, n, x, b) <= 1e-11);
  CHECK(stats.iterations <= n);
  CHECK(stats.residual <= 1e-12);
}

TEST_CASE("restart cycles still converge") {
  const int n = 80;
  const auto a = random_system(n, 3, 0.8);
  std::vector<cplx> b(n, 1.0);
  std::vector<cplx> x(n, 0.0);
  LinearSolveConfig cfg;
  cfg.tolerance = 1e-10;
  cfg.restart = 7;  // force many restarts
  cfg.max_iterations = 4000;
  gmres(dense_op(a, n), b, x, cfg);
  CHECK(residual_norm(a, n, x, b) <= 1e-9);
}

TEST_CASE("warm start from the exact solution finishes immediately") {
  const int n = 40;
  const auto a = random_system(n, 5);
  std::vector<cplx> sol(n);
  SplitMix64 rng(6);
  for (auto& v : sol) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  std::vector<cplx> b(n);
  dense_op(a, n)(sol, b);

  std::vector<cplx> x = sol;
  LinearSolveConfig cfg;
  SolveStats stats = gmres(dense_op(a, n), b, x, cfg);
  CHECK(stats.iterations == 0);
  for (int r = 0; r < n; ++r) CHECK(std::abs(x[r] - sol[r]) <= 1e-12);
}

TEST_CASE("identity system converges in one iteration") {
  const int n = 16;
  std::vector<cplx> a(n * n, 0.0);
  for (int r = 0; r < n; ++r) a[r * n + r] = 1.0;
  std::vector<cplx> b(n, cplx(0.5, -0.25));
  std::vector<cplx> x(n, 0.0);
  SolveStats stats = gmres(dense_op(a, n), b, x, LinearSolveConfig{});
  CHECK(stats.iterations == 1);
  for (int r = 0; r < n; ++r) CHECK(std::abs(x[r] - b[r]) <= 1e-14);
}

TEST_CASE("iteration budget exhaustion throws with stats attached") {
  const int n = 50;
  const auto a = random_system(n, 7, 3.0);  // strongly non-normal
  std::vector<cplx> b(n, 1.0);
  std::vector<cplx> x(n, 0.0);
  LinearSolveConfig cfg;
  cfg.tolerance = 1e-14;
  cfg.max_iterations = 3;
  cfg.restart = 2;
  CHECK_THROWS_AS(gmres(dense_op(a, n), b, x, cfg), NoConvergence);
  try {
    std::vector<cplx> y(n, 0.0);
    gmres(dense_op(a, n), b, y, cfg);
  } catch (const NoConvergence& e) {
    CHECK(e.iterations >= 3);
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("zero right hand side returns zero without iterating") {
  const int n = 10;
  const auto a = random_system(n, 9);
  std::vector<cplx> b(n, 0.0);
  std::vector<cplx> x(n, 0.0);
  SolveStats stats = gmres(dense_op(a, n), b, x, LinearSolveConfig{});
  CHECK(stats.iterations == 0);
  for (const cplx& v : x) CHECK(std::abs(v) == 0.0);
}
