#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlscat/contrast.hpp"
#include "nlscat/forward.hpp"
#include "nlscat/gmres.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/reconstruction.hpp"

namespace nlscat {

// One material-law term.  The coefficient is painted on a shape (disk, kite,
// polygon) or read per-node from a raster CSV; the exponent is the power of
// |u| it multiplies.
struct TermConfig {
  std::string shape;  // disk | kite | polygon | raster
  Vec2 center{0.0, 0.0};
  double radius = 0.0;
  double scale = 0.0;
  std::vector<Vec2> vertices;
  std::string file;
  double coefficient = 1.0;
  double exponent = 0.0;
};

enum class ReconKind { Factorization, Monotonicity, Both };

// Full run description, parsed from sectioned key = value text.  Unknown
// sections or keys are rejected.  Recognized sections and keys:
//
//   [scene]          wavenumber, halfwidth, halfcount, rescale (optional)
//   [term.N]         shape, center, radius, scale, vertices, file,
//                    coefficient, exponent        (N = 0, 1, ... contiguous)
//   [quadrature]     directions
//   [modes]          count
//   [forward]        tolerance, max_sweeps
//   [krylov]         tolerance, max_iterations, restart
//   [reconstruction] kind, norm, budget, stride
//   [output]         directory
//   [run]            seed, threads
//
// The optional rescale factor tau switches to amplitude-normalized units:
// each nonlinear coefficient is multiplied by tau^exponent when the contrast
// is materialized, and the density norm bound becomes norm / tau.
struct RunConfig {
  double wavenumber = 1.0;
  double halfwidth = 5.0;
  int halfcount = 10;
  double rescale = 1.0;

  std::vector<TermConfig> terms;

  int quadrature = 256;
  int modes = 16;

  FixedPointConfig forward{};
  LinearSolveConfig krylov{};

  ReconKind kind = ReconKind::Factorization;
  double norm_constraint = 1.0;
  int budget = 400;
  int stride = 1;

  std::string output_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
};

// Throws ConfigError with a line reference on any malformed, unknown, or
// missing entry.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

Grid2D config_grid(const RunConfig& config);

// Density sphere radius in the units the solver sees (norm / rescale).
double effective_norm_constraint(const RunConfig& config);

// Materializes the contrast on the configured grid, applying the rescale to
// nonlinear coefficients.  Invariant failures surface as InvariantViolation.
Contrast build_contrast(const RunConfig& config);

}  // namespace nlscat
