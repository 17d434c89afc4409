#pragma once

#include <vector>

#include "nlscat/grid.hpp"

namespace nlscat {

// Closed planar region used for scatterer supports and probing domains.
// Membership is boundary inclusive.  The kite is the classic bean-like
// benchmark curve t -> center + scale (cos t + 0.65 cos 2t - 0.65, 1.5 sin t);
// its membership test goes through a fine polygonization of the boundary, so
// points within ~1e-6 scale of the curve may fall on either side.
class Shape {
public:
  static Shape disk(Vec2 center, double radius);
  static Shape kite(Vec2 center, double scale);
  static Shape polygon(std::vector<Vec2> vertices);

  bool contains(Vec2 p) const;
  Vec2 bbox_min() const { return bbox_min_; }
  Vec2 bbox_max() const { return bbox_max_; }

private:
  Shape() = default;

  enum class Kind { Disk, Polygon } kind_ = Kind::Disk;
  Vec2 center_{};
  double radius_ = 0.0;
  std::vector<Vec2> vertices_;
  Vec2 bbox_min_{};
  Vec2 bbox_max_{};
};

// Rasterized support: one flag per grid node.
class SupportMask {
public:
  SupportMask(Grid2D grid, std::vector<unsigned char> inside);

  const Grid2D& grid() const { return grid_; }
  bool contains(int flat) const { return inside_[flat] != 0; }
  const std::vector<unsigned char>& flags() const { return inside_; }
  // Flat indices of the nodes inside, ascending.
  const std::vector<int>& nodes() const { return nodes_; }
  int count() const { return static_cast<int>(nodes_.size()); }

private:
  Grid2D grid_;
  std::vector<unsigned char> inside_;
  std::vector<int> nodes_;
};

// Marks the grid nodes contained in the shape.  The shape must fit strictly
// inside the open box (-R, R)^2 so that no marked node touches the outer
// ring; otherwise ShapeOutOfBounds is thrown.
SupportMask rasterize(const Shape& shape, const Grid2D& grid);

// Fraction of each node's grid cell covered by the shape, in [0, 1].  Cells
// cut by the boundary are resolved by midpoint subsampling (subsamples^2
// points); interior and exterior cells are exact.  Scaling a piecewise
// constant coefficient by this field represents the ideal shape with the
// correct cell masses, which is what grid convergence studies against
// continuum references need.  Same bounds contract as rasterize.
RealField coverage(const Shape& shape, const Grid2D& grid, int subsamples = 128);

}  // namespace nlscat
