#include "nlscat/contrast.hpp"

#include <cmath>
#include <limits>

#include "nlscat/errors.hpp"
#include "nlscat/rng.hpp"

namespace nlscat {
namespace {

using cplx = std::complex<double>;

SupportMask support_from_linear_term(const Grid2D& grid, const std::vector<ContrastTerm>& terms) {
  std::vector<unsigned char> inside(grid.point_count(), 0);
  for (int f = 0; f < grid.point_count(); ++f)
    if (terms[0].coefficient[f] != 0.0) inside[f] = 1;
  return SupportMask(grid, std::move(inside));
}

// |z|^a z with a fast path for the cubic Kerr case a = 2.
inline cplx power_term(cplx z, double alpha) {
  if (alpha == 2.0) return std::norm(z) * z;
  if (alpha == 0.0) return z;
  return std::pow(std::abs(z), alpha) * z;
}

}  // namespace

Contrast::Contrast(const Grid2D& grid, std::vector<ContrastTerm> terms)
    : grid_(grid),
      terms_(std::move(terms)),
      support_(terms_.empty() ? SupportMask(grid, std::vector<unsigned char>(grid.point_count(), 0))
                              : support_from_linear_term(grid, terms_)) {
  if (terms_.empty()) throw InvariantViolation("Contrast: need at least the linear term");
  if (terms_[0].exponent != 0.0)
    throw InvariantViolation("Contrast: first term must have exponent zero");
  for (size_t l = 0; l < terms_.size(); ++l) {
    if (static_cast<int>(terms_[l].coefficient.size()) != grid_.point_count())
      throw InvariantViolation("Contrast: coefficient field size does not match grid");
    if (terms_[l].exponent < 0.0)
      throw InvariantViolation("Contrast: exponents must be nonnegative");
    if (l > 0 && terms_[l].exponent <= terms_[l - 1].exponent)
      throw InvariantViolation("Contrast: exponents must be strictly increasing");
  }
  for (size_t l = 1; l < terms_.size(); ++l) {
    bool has_content = false;
    for (int f = 0; f < grid_.point_count(); ++f) {
      if (terms_[l].coefficient[f] != 0.0) {
        has_content = true;
        if (!support_.contains(f))
          throw InvariantViolation("Contrast: nonlinear coefficient outside the support of q0");
      }
    }
    if (has_content) linear_only_ = false;
  }
}

Contrast Contrast::linear_part() const {
  return Contrast(grid_, {terms_[0]});
}

void Contrast::multiply_nonlinear(const ComplexField& field, ComplexField& out) const {
  out.assign(grid_.point_count(), cplx(0.0));
  for (size_t l = 1; l < terms_.size(); ++l) {
    const auto& q = terms_[l].coefficient;
    const double alpha = terms_[l].exponent;
    for (int f : support_.nodes())
      if (q[f] != 0.0) out[f] += q[f] * power_term(field[f], alpha);
  }
}

void Contrast::multiply_full(const ComplexField& field, ComplexField& out) const {
  multiply_nonlinear(field, out);
  const auto& q0 = terms_[0].coefficient;
  for (int f : support_.nodes()) out[f] += q0[f] * field[f];
}

ContrastDiagnostics validate_contrast(const Contrast& contrast, int samples, uint64_t seed) {
  ContrastDiagnostics d;

  // Infimum over the scatterer; off the support the coefficient is 1 + 0 and
  // carries no information.  An empty support leaves the vacuum value 1.
  const auto& q0 = contrast.linear_coefficient();
  double min_q0 = contrast.support().nodes().empty()
                      ? 0.0
                      : std::numeric_limits<double>::infinity();
  for (int f : contrast.support().nodes()) min_q0 = std::min(min_q0, q0[f]);
  d.essinf_one_plus_q0 = 1.0 + min_q0;
  if (!(d.essinf_one_plus_q0 > 0.0))
    throw InvariantViolation("validate_contrast: essinf(1 + q0) must be positive");

  const auto& terms = contrast.terms();
  if (terms.size() < 2) return d;

  d.first_nonlinear_exponent = terms[1].exponent;
  for (size_t l = 1; l < terms.size(); ++l) {
    double sup = 0.0;
    for (double v : terms[l].coefficient) sup = std::max(sup, std::abs(v));
    d.lipschitz_bound += sup;
  }

  SplitMix64 rng(seed);
  auto draw = [&rng]() -> cplx {
    double r = std::sqrt(rng.uniform());
    double t = rng.uniform(0.0, 2.0 * M_PI);
    return {r * std::cos(t), r * std::sin(t)};
  };
  const auto& nodes = contrast.support().nodes();
  const double a1 = d.first_nonlinear_exponent;
  std::vector<cplx> deltas(terms.size());

  auto spatial_sup = [&](const std::vector<cplx>& per_term) {
    double sup = 0.0;
    for (int f : nodes) {
      cplx diff = 0.0;
      for (size_t l = 1; l < terms.size(); ++l) diff += terms[l].coefficient[f] * per_term[l];
      sup = std::max(sup, std::abs(diff));
    }
    return sup;
  };

  // Growth constant: sup over samples of |q(x,|z|) z - q0 z| / |z|^{1+a1}.
  double growth = 0.0;
  for (int s = 0; s < samples; ++s) {
    cplx z = draw();
    double r = std::abs(z);
    if (r < 1e-12) continue;
    for (size_t l = 1; l < terms.size(); ++l)
      deltas[l] = std::pow(r, terms[l].exponent) * z;
    growth = std::max(growth, spatial_sup(deltas) / std::pow(r, 1.0 + a1));
  }
  d.empirical_lipschitz = growth;

  // Two point quotient, reported without assertion.
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    cplx z1 = draw(), z2 = draw();
    if (std::abs(z1 - z2) < 1e-12) continue;
    double denom = (std::pow(std::abs(z1), a1) + std::pow(std::abs(z2), a1)) *
                   std::abs(z1 - z2);
    if (denom == 0.0) continue;
    for (size_t l = 1; l < terms.size(); ++l) {
      double a = terms[l].exponent;
      deltas[l] = std::pow(std::abs(z1), a) * z1 - std::pow(std::abs(z2), a) * z2;
    }
    worst = std::max(worst, spatial_sup(deltas) / denom);
  }
  d.worst_pair_ratio = worst;
  return d;
}

}  // namespace nlscat
