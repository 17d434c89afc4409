#pragma once

#include <cstdint>
#include <vector>

#include "nlscat/geometry.hpp"
#include "nlscat/grid.hpp"

namespace nlscat {

// One power-law term q_l(x) |z|^{alpha_l} of a generalized Kerr law.
struct ContrastTerm {
  RealField coefficient;
  double exponent = 0.0;
};

// Medium law q(x, |z|) = q0(x) + sum_{l>=1} q_l(x) |z|^{alpha_l}.  The first
// term must have exponent zero; exponents are strictly increasing; every
// nonlinear coefficient vanishes where q0 does, so the support of q0 is the
// scatterer.
class Contrast {
public:
  Contrast(const Grid2D& grid, std::vector<ContrastTerm> terms);

  const Grid2D& grid() const { return grid_; }
  const std::vector<ContrastTerm>& terms() const { return terms_; }
  const RealField& linear_coefficient() const { return terms_[0].coefficient; }
  const SupportMask& support() const { return support_; }

  bool is_linear() const { return linear_only_; }
  Contrast linear_part() const;

  // out = sum_{l>=1} q_l |field|^{alpha_l} field  (the fixed point right hand
  // side density); out must be grid sized and is fully overwritten.
  void multiply_nonlinear(const ComplexField& field, ComplexField& out) const;
  // Same including the linear term: out = q(x, |field|) field.
  void multiply_full(const ComplexField& field, ComplexField& out) const;

private:
  Grid2D grid_;
  std::vector<ContrastTerm> terms_;
  SupportMask support_;
  bool linear_only_ = true;
};

struct ContrastDiagnostics {
  double essinf_one_plus_q0 = 1.0;
  // Empirical constant of the growth bound |q(x,|z|) z - q0 z| <= C |z|^{1+a}
  // over sampled z in the closed unit disk, with a the first nonlinear
  // exponent.  For power laws this never exceeds lipschitz_bound.  Zero for
  // linear media.
  double empirical_lipschitz = 0.0;
  // Closed-form upper bound: sum of sup |q_l| over the nonlinear terms.
  double lipschitz_bound = 0.0;
  // Worst quotient of the two point difference bound
  //   |q(x,|z1|) z1 - q(x,|z2|) z2 - q0 (z1 - z2)| /
  //     ((|z1|^a + |z2|^a) |z1 - z2|)
  // over sampled pairs.  Reported only: for exponents above 1 this exceeds
  // lipschitz_bound by up to (1 + a) / 2 (radial near-diagonal pairs).
  double worst_pair_ratio = 0.0;
  double first_nonlinear_exponent = 0.0;
};

// Checks the solvability invariants and estimates the law's Lipschitz
// constant from random field-value pairs.  Throws InvariantViolation when
// essinf(1 + q0) <= 0.
ContrastDiagnostics validate_contrast(const Contrast& contrast, int samples = 10000,
                                      uint64_t seed = 0x5eed);

}  // namespace nlscat
