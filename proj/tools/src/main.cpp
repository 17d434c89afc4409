// Command line driver: scene validation, forward simulation, far field
// evaluation, support reconstruction, and the disk transmission cross-check.
//
// Exit codes: 0 ok, 2 parse/usage error, 3 invariant violation, 4 solver
// failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlscat/config.hpp"
#include "nlscat/contrast.hpp"
#include "nlscat/disk_reference.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/forward.hpp"
#include "nlscat/herglotz.hpp"
#include "nlscat/io.hpp"
#include "nlscat/ls_kernel.hpp"
#include "nlscat/reconstruction.hpp"

namespace {

using namespace nlscat;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSolver = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;  // empty = take from config
  int threads = -1;     // <0 = take from config
  long long seed = -1;  // <0 = take from config
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "run configuration file")->required();
  cmd->add_option("--out", opt.out_dir, "output directory (overrides the config)");
  cmd->add_option("--threads", opt.threads, "worker thread count (overrides the config)");
  cmd->add_option("--seed", opt.seed, "random seed (overrides the config)");
}

RunConfig load_with_overrides(const CommonOptions& opt) {
  RunConfig config = load_config(opt.config_path);
  if (!opt.out_dir.empty()) config.output_dir = opt.out_dir;
  if (opt.threads >= 0) config.threads = opt.threads;
  if (opt.seed >= 0) config.seed = static_cast<std::uint64_t>(opt.seed);
  return config;
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Scene build_scene(const RunConfig& config) {
  return Scene(build_contrast(config), config.wavenumber, config.quadrature, config.modes,
               config.forward, config.krylov);
}

ReconstructionConfig reconstruction_settings(const RunConfig& config) {
  ReconstructionConfig rc;
  rc.norm_constraint = effective_norm_constraint(config);
  rc.shift_stride = config.stride;
  rc.max_evals = config.budget;
  rc.threads = config.threads;
  return rc;
}

int cmd_validate(const CommonOptions& opt) {
  const RunConfig config = load_with_overrides(opt);
  const Grid2D grid = config_grid(config);
  const Contrast contrast = build_contrast(config);
  const ContrastDiagnostics diag = validate_contrast(contrast, 10000, config.seed);

  const int n = grid.points_per_axis();
  std::cout << "scene: wavenumber=" << config.wavenumber << " halfwidth=" << config.halfwidth
            << " halfcount=" << config.halfcount << " step=" << grid.step() << "\n";
  std::cout << "grid: " << n << "x" << n << " nodes, convolution fft "
            << next_smooth_size(2 * n - 1) << "x" << next_smooth_size(2 * n - 1) << "\n";
  for (std::size_t t = 0; t < contrast.terms().size(); ++t) {
    const ContrastTerm& term = contrast.terms()[t];
    double sup = 0.0;
    for (double v : term.coefficient) sup = std::max(sup, std::abs(v));
    std::cout << "term " << t << ": exponent=" << term.exponent << " sup=" << sup << "\n";
  }
  std::cout << "support nodes: " << contrast.support().count() << "\n";
  std::cout << "essinf(1+q0): " << diag.essinf_one_plus_q0 << "\n";
  std::cout << "lipschitz: empirical=" << diag.empirical_lipschitz
            << " bound=" << diag.lipschitz_bound << "\n";
  std::cout << "quadrature: " << config.quadrature << " directions, " << config.modes
            << " modes, norm=" << effective_norm_constraint(config) << "\n";
  std::cout << "valid\n";
  return kExitOk;
}

int cmd_forward(const CommonOptions& opt, double direction, const std::string& density_path) {
  const RunConfig config = load_with_overrides(opt);
  const Grid2D grid = config_grid(config);
  const Contrast contrast = build_contrast(config);
  const ConvolutionKernel kernel(grid, config.wavenumber);
  const std::filesystem::path dir = ensure_out_dir(config);

  ComplexField incident;
  if (!density_path.empty()) {
    const Density g = read_density_csv(density_path);
    const AngularQuadrature quad(config.quadrature);
    incident = herglotz_field(g, grid, config.wavenumber, quad);
  } else {
    incident = incident_plane_wave(grid, config.wavenumber, direction);
  }

  try {
    const ForwardResult result =
        solve_nonlinear(kernel, contrast, incident, config.forward, config.krylov);
    ComplexField total(grid.point_count());
    for (int f = 0; f < grid.point_count(); ++f)
      total[f] = incident[f] + result.linear_scattered[f] + result.correction[f];
    write_field_csv((dir / "u0s.csv").string(), grid, result.linear_scattered);
    write_field_csv((dir / "w.csv").string(), grid, result.correction);
    write_field_csv((dir / "total.csv").string(), grid, total);
    write_increments_jsonl((dir / "increments.jsonl").string(), result.increments);
    std::cout << "sweeps: " << result.sweeps << "\n";
    if (!result.increments.empty())
      std::cout << "final increment: " << result.increments.back() << "\n";
    return kExitOk;
  } catch (const NoContraction& e) {
    std::cerr << "no contraction: " << e.what() << "\n";
    for (std::size_t s = 0; s < e.increments.size(); ++s)
      std::cerr << "  sweep " << (s + 1) << ": increment " << e.increments[s] << "\n";
    write_increments_jsonl((dir / "increments.jsonl").string(), e.increments);
    return kExitSolver;
  }
}

int cmd_farfield(const CommonOptions& opt, const std::string& density_path) {
  const RunConfig config = load_with_overrides(opt);
  const Density g = read_density_csv(density_path);
  if (g.modes() != config.modes)
    throw InvariantViolation("density file carries " + std::to_string(g.modes()) +
                             " modes but the config asks for " + std::to_string(config.modes));
  const double rho = effective_norm_constraint(config);
  if (g.norm() > rho * (1.0 + 1e-12))
    throw InvariantViolation("density norm exceeds the configured bound");

  const Scene scene = build_scene(config);
  const std::filesystem::path dir = ensure_out_dir(config);
  const FarFieldPattern pattern = far_field_operator(g, scene);
  write_pattern_csv((dir / "pattern.csv").string(), pattern);
  std::cout << "far field samples: " << pattern.size() << "\n";
  return kExitOk;
}

int cmd_reconstruct(const CommonOptions& opt) {
  const RunConfig config = load_with_overrides(opt);
  const Scene scene = build_scene(config);
  const std::filesystem::path dir = ensure_out_dir(config);
  const ReconstructionConfig rc = reconstruction_settings(config);

  std::vector<std::pair<IndicatorKind, std::string>> kinds;
  if (config.kind == ReconKind::Factorization || config.kind == ReconKind::Both)
    kinds.emplace_back(IndicatorKind::Factorization, "factorization");
  if (config.kind == ReconKind::Monotonicity || config.kind == ReconKind::Both)
    kinds.emplace_back(IndicatorKind::Monotonicity, "monotonicity");

  int total_points = 0;
  int ok_points = 0;
  for (const auto& [kind, name] : kinds) {
    const IndicatorMap map = indicator_map(kind, scene.grid(), scene, rc);
    total_points += static_cast<int>(map.points.size());
    ok_points += map.ok_count();

    write_indicator_csv((dir / (name + "_initial.csv")).string(), map, /*initial=*/true);
    write_indicator_csv((dir / (name + ".csv")).string(), map, /*initial=*/false);
    std::vector<double> initial(map.points.size()), refined(map.points.size());
    for (std::size_t f = 0; f < map.points.size(); ++f) {
      initial[f] = map.points[f].initial;
      refined[f] = map.points[f].optimized;
    }
    write_pgm((dir / (name + "_initial.pgm")).string(), map.sampling, initial);
    write_pgm((dir / (name + ".pgm")).string(), map.sampling, refined);
    write_indicator_jsonl((dir / (name + ".jsonl")).string(), map);
    std::cout << name << ": " << map.ok_count() << "/" << map.points.size() << " points ok\n";
  }

  if (ok_points * 10 < total_points * 9) {
    std::cerr << "too many failed points: " << ok_points << "/" << total_points << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_oracle_disk(const CommonOptions& opt, double direction) {
  const RunConfig config = load_with_overrides(opt);
  if (config.terms.size() != 1 || config.terms[0].shape != "disk" ||
      config.terms[0].exponent != 0.0)
    throw InvariantViolation("the disk cross-check needs a single linear disk term");
  if (config.terms[0].center.x != 0.0 || config.terms[0].center.y != 0.0)
    throw InvariantViolation("the disk cross-check needs the disk centered at the origin");

  const double q0 = config.terms[0].coefficient;
  const double radius = config.terms[0].radius;

  auto error_at = [&](int halfcount) {
    RunConfig c = config;
    c.halfcount = halfcount;
    const Grid2D grid = config_grid(c);
    const Contrast contrast = build_contrast(c);
    const ConvolutionKernel kernel(grid, c.wavenumber);
    const ComplexField incident = incident_plane_wave(grid, c.wavenumber, direction);
    const ComplexField numeric = solve_linear(kernel, contrast, incident, c.krylov);

    if (q0 == 0.0) return std::pair<double, double>(sup_norm(numeric), 1.0);

    const DiskScattering reference(c.wavenumber, q0, radius);
    const ComplexField exact = reference.scattered_field_on_grid(grid, direction);
    return std::pair<double, double>(sup_norm_diff(numeric, exact), sup_norm(exact));
  };

  const auto [err_coarse, scale_coarse] = error_at(config.halfcount);
  const auto [err_fine, scale_fine] = error_at(2 * config.halfcount);
  const double rel_coarse = err_coarse / scale_coarse;
  const double rel_fine = err_fine / scale_fine;

  const Grid2D grid = config_grid(config);
  std::cout << "step " << grid.step() << ": sup error " << err_coarse << " (relative "
            << rel_coarse << ")\n";
  std::cout << "step " << grid.step() / 2.0 << ": sup error " << err_fine << " (relative "
            << rel_fine << ")\n";
  std::cout << "convergence factor: " << (err_fine > 0.0 ? err_coarse / err_fine : 0.0) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlinear Helmholtz scattering toolkit"};
  app.require_subcommand(1);

  CommonOptions validate_opt, forward_opt, farfield_opt, reconstruct_opt, oracle_opt;
  double forward_direction = 0.0;
  std::string forward_density;
  std::string farfield_density;
  double oracle_direction = 0.0;

  CLI::App* validate = app.add_subcommand("validate", "parse and check a configuration");
  add_common(validate, validate_opt);

  CLI::App* forward = app.add_subcommand("forward", "run the fixed point forward solver");
  add_common(forward, forward_opt);
  forward->add_option("--direction", forward_direction, "plane wave direction angle (radians)");
  forward->add_option("--density", forward_density,
                      "density CSV for a superposed plane wave incident field");

  CLI::App* farfield = app.add_subcommand("farfield", "evaluate the far field of a density");
  add_common(farfield, farfield_opt);
  farfield->add_option("--density", farfield_density, "density CSV file")->required();

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "compute support indicator maps");
  add_common(reconstruct, reconstruct_opt);

  CLI::App* oracle =
      app.add_subcommand("oracle-disk", "compare the linear solver against the disk series");
  add_common(oracle, oracle_opt);
  oracle->add_option("--direction", oracle_direction, "plane wave direction angle (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_opt);
    if (forward->parsed()) return cmd_forward(forward_opt, forward_direction, forward_density);
    if (farfield->parsed()) return cmd_farfield(farfield_opt, farfield_density);
    if (reconstruct->parsed()) return cmd_reconstruct(reconstruct_opt);
    if (oracle->parsed()) return cmd_oracle_disk(oracle_opt, oracle_direction);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const NoContraction& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NoConvergence& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
