#include "nlscat/reconstruction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlscat/errors.hpp"
#include "nlscat/forward.hpp"
#include "nlscat/threading.hpp"

namespace nlscat {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// <g, phi_z> = (Hg)(z) expressed through the scene's per-point mode row.
cplx pairing_denominator(const Density& g, const std::vector<cplx>& row) {
  cplx den = 0.0;
  for (std::size_t n = 0; n < g.coefficients.size(); ++n) den += g.coefficients[n] * row[n];
  return den;
}

// One forward solve; counts toward the caller's budget only when it runs.
double objective_with_row(IndicatorKind kind, const Density& g, const std::vector<cplx>& row,
                          const Scene& scene, double floor, int& evals) {
  const cplx den = pairing_denominator(g, row);
  if (std::abs(den) < floor) throw DegenerateDenominator("sampling functional below the denominator floor");
  const FarFieldPattern pattern = far_field_operator(g, scene);
  ++evals;
  const std::vector<cplx> nodal = evaluate_density(g, scene.quadrature());
  const cplx num = angular_inner_product(pattern.values, nodal, scene.quadrature());
  return indicator_quotient(kind, num, den);
}

std::vector<double> flatten(const Density& g) {
  std::vector<double> x(2 * g.coefficients.size());
  for (std::size_t n = 0; n < g.coefficients.size(); ++n) {
    x[2 * n] = g.coefficients[n].real();
    x[2 * n + 1] = g.coefficients[n].imag();
  }
  return x;
}

Density unflatten(const std::vector<double>& x) {
  std::vector<cplx> coeffs(x.size() / 2);
  for (std::size_t n = 0; n < coeffs.size(); ++n) coeffs[n] = cplx(x[2 * n], x[2 * n + 1]);
  return Density(std::move(coeffs));
}

double vec_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void rescale_to(std::vector<double>& x, double target) {
  const double n = vec_norm(x);
  if (n == 0.0) throw DegenerateDenominator("cannot project the zero density onto the sphere");
  const double s = target / n;
  for (double& v : x) v *= s;
}

}  // namespace

double denominator_floor(const ReconstructionConfig& config) {
  return config.denominator_floor_scale * config.norm_constraint * std::sqrt(2.0 * kPi);
}

std::vector<cplx> test_function(Vec2 z, const Scene& scene) {
  const AngularQuadrature& quad = scene.quadrature();
  std::vector<cplx> values(quad.nodes());
  for (int m = 0; m < quad.nodes(); ++m) {
    const Vec2 theta = quad.direction(m);
    values[m] = std::exp(cplx(0.0, -scene.wavenumber() * dot(z, theta)));
  }
  return values;
}

double indicator_quotient(IndicatorKind kind, cplx numerator, cplx denominator) {
  const double d2 = std::norm(denominator);
  if (kind == IndicatorKind::Factorization) return std::abs(numerator) / d2;
  return numerator.real() / d2;
}

double indicator_objective(IndicatorKind kind, const Density& g, Vec2 z, const Scene& scene,
                           double floor) {
  int evals = 0;
  return objective_with_row(kind, g, scene.mode_row(z), scene, floor, evals);
}

CandidateCache::CandidateCache(const Scene& scene, const Grid2D& sampling,
                               const ReconstructionConfig& config,
                               std::vector<Vec2> custom_shifts) {
  std::vector<Vec2> shifts = std::move(custom_shifts);
  if (shifts.empty()) {
    const int stride = std::max(1, config.shift_stride);
    const int half = sampling.halfcount();
    for (int j = -half; j <= half; j += stride)
      for (int i = -half; i <= half; i += stride) shifts.push_back(sampling.point(i, j));
  }

  const int modes = scene.density_modes();
  const AngularQuadrature& quad = scene.quadrature();
  const double rho = config.norm_constraint;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);

  // Enumeration order fixes the tie-break: phase, then mode, then shift.
  for (int p = 0; p < 2; ++p) {
    const cplx phase = (p == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    for (int l = -modes / 2; l < modes / 2; ++l) {
      for (const Vec2& shift : shifts) {
        Candidate c;
        c.phase = p;
        c.mode = l;
        c.shift = shift;

        // Sample the seed density at the quadrature nodes, then project onto
        // the scene's modes.
        std::vector<cplx> coeffs(modes, 0.0);
        for (int m = 0; m < quad.nodes(); ++m) {
          const double t = quad.angle(m);
          const Vec2 theta = quad.direction(m);
          const cplx sample = rho * phase * inv_sqrt_2pi *
                              std::exp(cplx(0.0, l * t - scene.wavenumber() * dot(shift, theta)));
          for (int n = 0; n < modes; ++n) {
            const int mode_n = n - modes / 2;
            coeffs[n] += quad.weight() * inv_sqrt_2pi * sample * std::exp(cplx(0.0, -mode_n * t));
          }
        }

        double norm = 0.0;
        for (const cplx& v : coeffs) norm += std::norm(v);
        norm = std::sqrt(norm);
        if (norm < 1e-14 * rho) {
          c.valid = false;
          candidates_.push_back(std::move(c));
          continue;
        }
        for (cplx& v : coeffs) v *= rho / norm;
        c.density = Density(std::move(coeffs));
        c.valid = true;
        candidates_.push_back(std::move(c));
      }
    }
  }

  // One forward solve per candidate; the numerators are reused at every
  // sampling point.
  parallel_for(candidates_.size(), config.threads, [&](std::size_t idx) {
    Candidate& c = candidates_[idx];
    if (!c.valid) return;
    try {
      const FarFieldPattern pattern = far_field_operator(c.density, scene);
      const std::vector<cplx> nodal = evaluate_density(c.density, quad);
      c.numerator = angular_inner_product(pattern.values, nodal, quad);
    } catch (const NoContraction&) {
      c.valid = false;
    } catch (const NoConvergence&) {
      c.valid = false;
    }
  });
  for (const Candidate& c : candidates_)
    if (!c.valid) ++failed_;
}

GlobalSearchResult global_search(IndicatorKind kind, Vec2 z, const Scene& scene,
                                 const CandidateCache& cache, double floor) {
  const std::vector<cplx> row = scene.mode_row(z);
  GlobalSearchResult best;
  for (std::size_t idx = 0; idx < cache.candidates().size(); ++idx) {
    const Candidate& c = cache.candidates()[idx];
    if (!c.valid) continue;
    const cplx den = pairing_denominator(c.density, row);
    if (std::abs(den) < floor) continue;
    const double value = indicator_quotient(kind, c.numerator, den);
    if (best.candidate_index < 0 || value < best.value) {
      best.candidate_index = static_cast<int>(idx);
      best.value = value;
    }
  }
  if (best.candidate_index < 0) throw AllCandidatesDegenerate("no candidate clears the denominator floor at this point");
  return best;
}

MinimizeResult minimize_on_sphere(IndicatorKind kind, Vec2 z, const Density& start,
                                  const Scene& scene, const ReconstructionConfig& config) {
  const std::vector<cplx> row = scene.mode_row(z);
  const double floor = denominator_floor(config);
  const double rho = config.norm_constraint;
  const double fd_step = config.fd_step_scale * rho;
  const std::size_t dim = 2 * start.coefficients.size();

  MinimizeResult result;
  result.minimizer = start;

  std::vector<double> x = flatten(start);
  rescale_to(x, rho);

  int evals = 0;
  auto eval = [&](const std::vector<double>& p) {
    return objective_with_row(kind, unflatten(p), row, scene, floor, evals);
  };

  double fx = eval(x);
  result.value = fx;
  result.minimizer = unflatten(x);

  std::vector<double> accepted_history{fx};

  while (evals + static_cast<int>(2 * dim) + 1 <= config.max_evals) {
    // Central differences through the sphere retraction.
    std::vector<double> grad(dim, 0.0);
    bool grad_ok = true;
    for (std::size_t i = 0; i < dim && grad_ok; ++i) {
      auto perturbed = [&](double delta) {
        std::vector<double> p = x;
        p[i] += delta;
        rescale_to(p, rho);
        return eval(p);
      };
      bool plus_ok = true, minus_ok = true;
      double fp = 0.0, fm = 0.0;
      try {
        fp = perturbed(fd_step);
      } catch (const DegenerateDenominator&) {
        plus_ok = false;
      }
      try {
        fm = perturbed(-fd_step);
      } catch (const DegenerateDenominator&) {
        minus_ok = false;
      }
      if (plus_ok && minus_ok) {
        grad[i] = (fp - fm) / (2.0 * fd_step);
      } else if (plus_ok) {
        grad[i] = (fp - fx) / fd_step;
      } else if (minus_ok) {
        grad[i] = (fx - fm) / fd_step;
      } else {
        grad[i] = 0.0;
      }
      if (evals >= config.max_evals) grad_ok = false;
    }
    if (!grad_ok) break;

    // Project out the radial component: tangent directions preserve ||g||.
    double radial = 0.0;
    for (std::size_t i = 0; i < dim; ++i) radial += grad[i] * x[i];
    radial /= rho * rho;
    for (std::size_t i = 0; i < dim; ++i) grad[i] -= radial * x[i];

    const double gnorm = vec_norm(grad);
    if (gnorm < config.gradient_floor) break;

    // Armijo backtracking along the normalized descent direction.
    const double c1 = 1e-4;
    double step = 0.5 * rho;
    bool accepted = false;
    while (step > 1e-12 * rho && evals < config.max_evals) {
      std::vector<double> trial = x;
      for (std::size_t i = 0; i < dim; ++i) trial[i] -= (step / gnorm) * grad[i];
      rescale_to(trial, rho);
      double ft;
      try {
        ft = eval(trial);
      } catch (const DegenerateDenominator&) {
        step *= config.step_shrink;
        continue;
      }
      if (ft <= fx - c1 * step * gnorm) {
        x = std::move(trial);
        fx = ft;
        accepted = true;
        break;
      }
      step *= config.step_shrink;
    }
    if (!accepted) break;

    if (fx < result.value) {
      result.value = fx;
      result.minimizer = unflatten(x);
    }
    accepted_history.push_back(fx);

    const std::size_t window = static_cast<std::size_t>(config.stall_window);
    if (accepted_history.size() > window) {
      const double ref = accepted_history[accepted_history.size() - 1 - window];
      const double drop = ref - fx;
      if (drop < config.stall_tolerance * std::max(std::abs(ref), 1e-30)) break;
    }
  }

  result.evals = evals;
  return result;
}

int IndicatorMap::ok_count() const {
  int n = 0;
  for (const IndicatorPoint& p : points)
    if (p.status == PointStatus::Ok) ++n;
  return n;
}

IndicatorMap indicator_map(IndicatorKind kind, const Grid2D& sampling, const Scene& scene,
                           const ReconstructionConfig& config) {
  const CandidateCache cache(scene, sampling, config);
  const double floor = denominator_floor(config);

  IndicatorMap map(kind, sampling);
  parallel_for(sampling.point_count(), config.threads, [&](std::size_t flat) {
    const auto t0 = std::chrono::steady_clock::now();
    IndicatorPoint& point = map.points[flat];
    const Vec2 z = sampling.point(static_cast<int>(flat));
    try {
      const GlobalSearchResult gs = global_search(kind, z, scene, cache, floor);
      point.initial = gs.value;
      point.optimized = gs.value;
      if (config.max_evals > 0) {
        const MinimizeResult mr = minimize_on_sphere(
            kind, z, cache.candidates()[gs.candidate_index].density, scene, config);
        point.optimized = std::min(gs.value, mr.value);
        point.evals = mr.evals;
      }
      point.status = PointStatus::Ok;
    } catch (const AllCandidatesDegenerate&) {
      point.initial = quiet_nan();
      point.optimized = quiet_nan();
      point.status = PointStatus::Degenerate;
    } catch (const DegenerateDenominator&) {
      point.status = PointStatus::Degenerate;
    } catch (const NoContraction&) {
      point.status = PointStatus::NoContraction;
    } catch (const NoConvergence&) {
      point.status = PointStatus::SolverFailure;
    }
    const auto t1 = std::chrono::steady_clock::now();
    point.milliseconds = std::chrono::duration<double, std::milli>(t1 - t0).count();
  });
  return map;
}

double probing_quadratic_form(const Shape& region, const Density& g, const Scene& scene) {
  const SupportMask mask = rasterize(region, scene.grid());
  const ComplexField field = scene.herglotz(g);
  const double k = scene.wavenumber();
  const double h = scene.grid().step();
  double sum = 0.0;
  for (std::size_t flat : mask.nodes()) sum += std::norm(field[flat]);
  return k * k * h * h * sum;
}

}  // namespace nlscat
