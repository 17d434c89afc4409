#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "nlscat/bessel.hpp"
#include "nlscat/contrast.hpp"
#include "nlscat/forward.hpp"
#include "nlscat/geometry.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/ls_kernel.hpp"

namespace {

using namespace nlscat;

Contrast disk_contrast(const Grid2D& grid, double q0, double q1) {
  const SupportMask mask = rasterize(Shape::disk({0.0, 0.0}, 1.0), grid);
  std::vector<ContrastTerm> terms;
  RealField linear(grid.point_count(), 0.0);
  for (int f : mask.nodes()) linear[f] = q0;
  terms.push_back({linear, 0.0});
  if (q1 != 0.0) {
    RealField cubic(grid.point_count(), 0.0);
    for (int f : mask.nodes()) cubic[f] = q1;
    terms.push_back({cubic, 2.0});
  }
  return Contrast(grid, std::move(terms));
}

void BM_HankelKernel(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hankel1_0(x));
    x += 1e-9;  // defeat value caching without leaving the argument range
  }
}
BENCHMARK(BM_HankelKernel);

void BM_BesselMidRange(benchmark::State& state) {
  double x = 12.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_BesselMidRange);

void BM_PotentialApply(benchmark::State& state) {
  const Grid2D grid(5.0, static_cast<int>(state.range(0)));
  const ConvolutionKernel kernel(grid, 1.0);
  ComplexField f(grid.point_count(), {1.0, 0.5});
  ComplexField out(grid.point_count());
  auto ws = kernel.make_workspace();
  for (auto _ : state) {
    kernel.apply_potential(f, out, *ws);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_PotentialApply)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_LinearSolve(benchmark::State& state) {
  const Grid2D grid(5.0, static_cast<int>(state.range(0)));
  const Contrast contrast = disk_contrast(grid, 1.16, 0.0);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField incident = incident_plane_wave(grid, 1.0, 0.0);
  for (auto _ : state) {
    ComplexField u = solve_linear(kernel, contrast, incident, LinearSolveConfig{});
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_LinearSolve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_NonlinearForward(benchmark::State& state) {
  const Grid2D grid(5.0, 10);
  const Contrast contrast = disk_contrast(grid, 1.16, 0.26);
  const ConvolutionKernel kernel(grid, 1.0);
  const ComplexField incident = incident_plane_wave(grid, 1.0, 0.0);
  for (auto _ : state) {
    ForwardResult r = solve_nonlinear(kernel, contrast, incident, FixedPointConfig{},
                                      LinearSolveConfig{});
    benchmark::DoNotOptimize(r.correction.data());
  }
}
BENCHMARK(BM_NonlinearForward)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
