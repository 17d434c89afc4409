#include "nlscat/grid.hpp"

#include "nlscat/errors.hpp"

namespace nlscat {

Grid2D::Grid2D(double halfwidth, int halfcount)
    : halfwidth_(halfwidth), halfcount_(halfcount) {
  if (!(halfwidth > 0.0))
    throw InvariantViolation("Grid2D: halfwidth must be positive");
  if (halfcount < 1)
    throw InvariantViolation("Grid2D: halfcount must be at least 1");
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace nlscat
