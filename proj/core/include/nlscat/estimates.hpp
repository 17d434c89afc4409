#pragma once

#include <complex>
#include <cstdint>

#include "nlscat/contrast.hpp"

namespace nlscat {

// Pointwise inequality | |a|^α a - |b|^α b | <= 2 (|a|+|b|)^α |a-b| for
// α > 0, checked with a small floating-point slack.
bool power_difference_bound_holds(std::complex<double> a, std::complex<double> b, double alpha);

struct PowerDifferenceSurvey {
  long samples = 0;
  long failures = 0;
  double worst_margin = 0.0;  // max of lhs - rhs over all samples (negative when slack-free)
};

// Randomized sweep of the inequality over a, b in the unit disk and
// α in (0, 5].  Deterministic for a fixed seed.
PowerDifferenceSurvey survey_power_difference(long samples, std::uint64_t seed);

struct ContrastContractReport {
  double empirical_constant = 0.0;  // sup of the sampled growth quotients
  double theoretical_bound = 0.0;   // sum of the nonlinear coefficient sup norms
  double worst_pair_ratio = 0.0;    // sup of the sampled two-point quotients
};

// Samples the material-law growth quotient
//   || q(.,|z|) z - q0 z ||_inf / |z|^{1+α}
// over random z in the closed unit disk, α the smallest nonlinear exponent.
// For generalized Kerr laws the empirical constant stays below the sum of
// the nonlinear coefficient sup norms (exponents increase, |z| <= 1).  The
// two-point difference quotient
//   || q(.,|z1|) z1 - q(.,|z2|) z2 - q0 (z1 - z2) ||_inf
//   / ((|z1|^α + |z2|^α) |z1 - z2|)
// is reported alongside; radial near-diagonal pairs push it up to
// (1 + α) / 2 times the bound, so it carries no assertion.
ContrastContractReport contrast_contract_check(const Contrast& q, int samples,
                                               std::uint64_t seed);

}  // namespace nlscat
