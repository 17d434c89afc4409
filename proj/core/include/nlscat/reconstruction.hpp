#pragma once

#include <complex>
#include <vector>

#include "nlscat/geometry.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/herglotz.hpp"

namespace nlscat {

// Which inf-criterion quotient drives the support indicator:
//   Factorization:  | <F(g), g> |  /  | <g, phi_z> |^2
//   Monotonicity:   Re <F(g), g>  /  | <phi_z, g> |^2
// Small infima flag points outside the scatterer, positive infima inside.
enum class IndicatorKind { Factorization, Monotonicity };

struct ReconstructionConfig {
  double norm_constraint = 1.0;  // radius of the density sphere ||g|| = rho
  int shift_stride = 1;          // stride through the sampling grid for candidate shifts
  int max_evals = 400;           // optimizer forward-solve budget per sampling point
  double fd_step_scale = 1e-4;   // finite difference step, relative to rho
  double step_shrink = 0.5;      // backtracking shrink factor
  double stall_tolerance = 1e-4; // relative decrease over stall_window accepted steps
  int stall_window = 10;
  double gradient_floor = 1e-8;  // stationarity threshold on the projected gradient
  double denominator_floor_scale = 1e-10;  // floor = scale * rho * sqrt(2 pi)
  int threads = 1;
};

double denominator_floor(const ReconstructionConfig& config);

// phi_z(theta_m) = e^{-i k z . theta_m} sampled at the quadrature nodes.
std::vector<std::complex<double>> test_function(Vec2 z, const Scene& scene);

// Quotient for a precomputed pairing numerator <F(g), g> and denominator
// <g, phi_z>.
double indicator_quotient(IndicatorKind kind, std::complex<double> numerator,
                          std::complex<double> denominator);

// Full objective evaluation (one forward solve).  Throws
// DegenerateDenominator when |<g, phi_z>| falls below the floor.
double indicator_objective(IndicatorKind kind, const Density& g, Vec2 z, const Scene& scene,
                           double floor);

// One global search candidate g_{p,l,z'}: the sphere-scaled single mode
// e^{i l t} with phase factor i^p, modulated by the plane wave shift to z',
// projected onto the scene's modes and renormalized back to the sphere.
struct Candidate {
  int phase = 0;
  int mode = 0;
  Vec2 shift{};
  Density density{2};  // placeholder until the cache fills it
  std::complex<double> numerator{};  // <F(g), g>, shared by every sampling point
  bool valid = false;
};

// Evaluates F once per candidate; every sampling point reuses the numerators
// because only the denominator depends on z.
class CandidateCache {
public:
  // Shifts default to the sampling grid thinned by config.shift_stride;
  // custom_shifts overrides them when nonempty.
  CandidateCache(const Scene& scene, const Grid2D& sampling, const ReconstructionConfig& config,
                 std::vector<Vec2> custom_shifts = {});

  const std::vector<Candidate>& candidates() const { return candidates_; }
  int failed_count() const { return failed_; }

private:
  std::vector<Candidate> candidates_;
  int failed_ = 0;
};

struct GlobalSearchResult {
  int candidate_index = -1;
  double value = 0.0;
};

// Minimum of the quotient over the cached candidates at the point z; ties
// keep the first candidate in (p, l, z') enumeration order.  Throws
// AllCandidatesDegenerate when no candidate clears the denominator floor.
GlobalSearchResult global_search(IndicatorKind kind, Vec2 z, const Scene& scene,
                                 const CandidateCache& cache, double floor);

struct MinimizeResult {
  Density minimizer{2};
  double value = 0.0;
  int evals = 0;  // forward solves consumed
};

// Projected gradient descent on the sphere ||g|| = rho with central finite
// differences and Armijo backtracking.  Monotone: the returned value never
// exceeds the starting value.  NoContraction from the forward solver
// propagates; degenerate-denominator trial points are treated as rejected
// steps.
MinimizeResult minimize_on_sphere(IndicatorKind kind, Vec2 z, const Density& start,
                                  const Scene& scene, const ReconstructionConfig& config);

enum class PointStatus { Ok, Degenerate, NoContraction, SolverFailure };

struct IndicatorPoint {
  double initial = 0.0;    // global search value I0(z)
  double optimized = 0.0;  // refined value I(z) <= I0(z)
  int evals = 0;
  PointStatus status = PointStatus::Ok;
  double milliseconds = 0.0;
};

struct IndicatorMap {
  IndicatorMap(IndicatorKind kind, Grid2D sampling)
      : kind(kind), sampling(sampling), points(sampling.point_count()) {}

  IndicatorKind kind;
  Grid2D sampling;
  std::vector<IndicatorPoint> points;  // grid flat order

  int ok_count() const;
};

// Full support scan: global search plus per-point refinement at every node of
// the sampling grid.  Failures are recorded per point; the map is always
// returned.  Deterministic for a fixed configuration and thread count.
IndicatorMap indicator_map(IndicatorKind kind, const Grid2D& sampling, const Scene& scene,
                           const ReconstructionConfig& config);

// <P_B g, g> = k^2 h^2 sum_{x in B} |Hg(x)|^2 over the rasterized region.
double probing_quadratic_form(const Shape& region, const Density& g, const Scene& scene);

}  // namespace nlscat
