#include "nlscat/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlscat/rng.hpp"

namespace nlscat {

namespace {

using cplx = std::complex<double>;

cplx random_unit_disk(SplitMix64& rng) {
  const double r = std::sqrt(rng.uniform());
  const double t = 2.0 * std::numbers::pi * rng.uniform();
  return cplx(r * std::cos(t), r * std::sin(t));
}

}  // namespace

bool power_difference_bound_holds(cplx a, cplx b, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power_difference_bound_holds: alpha must be positive");
  const double lhs = std::abs(std::pow(std::abs(a), alpha) * a - std::pow(std::abs(b), alpha) * b);
  const double rhs = 2.0 * std::pow(std::abs(a) + std::abs(b), alpha) * std::abs(a - b);
  return lhs <= rhs + 1e-12 * std::max(1.0, rhs);
}

PowerDifferenceSurvey survey_power_difference(long samples, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PowerDifferenceSurvey survey;
  survey.samples = samples;
  survey.worst_margin = -std::numeric_limits<double>::infinity();
  for (long s = 0; s < samples; ++s) {
    const cplx a = random_unit_disk(rng);
    const cplx b = random_unit_disk(rng);
    const double alpha = 5.0 * rng.uniform();
    if (alpha == 0.0) continue;
    const double lhs =
        std::abs(std::pow(std::abs(a), alpha) * a - std::pow(std::abs(b), alpha) * b);
    const double rhs = 2.0 * std::pow(std::abs(a) + std::abs(b), alpha) * std::abs(a - b);
    survey.worst_margin = std::max(survey.worst_margin, lhs - rhs);
    if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) ++survey.failures;
  }
  return survey;
}

ContrastContractReport contrast_contract_check(const Contrast& q, int samples,
                                               std::uint64_t seed) {
  const ContrastDiagnostics diag = validate_contrast(q, samples, seed);
  ContrastContractReport report;
  report.empirical_constant = diag.empirical_lipschitz;
  report.theoretical_bound = diag.lipschitz_bound;
  report.worst_pair_ratio = diag.worst_pair_ratio;
  return report;
}

}  // namespace nlscat
