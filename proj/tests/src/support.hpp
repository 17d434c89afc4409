#pragma once

// Shared scene builders for the test suites.

#include <vector>

#include "nlscat/contrast.hpp"
#include "nlscat/geometry.hpp"
#include "nlscat/grid.hpp"

namespace testsupport {

// Homogeneous disk of radius 1 at the origin with linear contrast q0 and an
// optional cubic term q1 |u|^2.
inline nlscat::Contrast disk_contrast(const nlscat::Grid2D& grid, double q0, double q1 = 0.0,
                                      double radius = 1.0) {
  using namespace nlscat;
  const SupportMask mask = rasterize(Shape::disk({0.0, 0.0}, radius), grid);
  std::vector<ContrastTerm> terms;
  RealField linear(grid.point_count(), 0.0);
  for (int f : mask.nodes()) linear[f] = q0;
  terms.push_back({std::move(linear), 0.0});
  if (q1 != 0.0) {
    RealField cubic(grid.point_count(), 0.0);
    for (int f : mask.nodes()) cubic[f] = q1;
    terms.push_back({std::move(cubic), 2.0});
  }
  return Contrast(grid, std::move(terms));
}

inline nlscat::Contrast kite_contrast(const nlscat::Grid2D& grid, double q0, double q1 = 0.0,
                                      double scale = 1.0) {
  using namespace nlscat;
  const SupportMask mask = rasterize(Shape::kite({0.0, 0.0}, scale), grid);
  std::vector<ContrastTerm> terms;
  RealField linear(grid.point_count(), 0.0);
  for (int f : mask.nodes()) linear[f] = q0;
  terms.push_back({std::move(linear), 0.0});
  if (q1 != 0.0) {
    RealField cubic(grid.point_count(), 0.0);
    for (int f : mask.nodes()) cubic[f] = q1;
    terms.push_back({std::move(cubic), 2.0});
  }
  return Contrast(grid, std::move(terms));
}

}  // namespace testsupport
