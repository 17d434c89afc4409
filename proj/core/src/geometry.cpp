#include "nlscat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlscat/errors.hpp"

namespace nlscat {
namespace {

constexpr int kKiteSegments = 2048;

void update_bbox(Vec2& lo, Vec2& hi, Vec2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  Vec2 ab = b - a;
  Vec2 ap = p - a;
  if (cross(ab, ap) != 0.0) return false;
  double t = dot(ap, ab);
  return t >= 0.0 && t <= dot(ab, ab);
}

}  // namespace

Shape Shape::disk(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw InvariantViolation("Shape::disk: radius must be positive");
  Shape s;
  s.kind_ = Kind::Disk;
  s.center_ = center;
  s.radius_ = radius;
  s.bbox_min_ = {center.x - radius, center.y - radius};
  s.bbox_max_ = {center.x + radius, center.y + radius};
  return s;
}

Shape Shape::kite(Vec2 center, double scale) {
  if (!(scale > 0.0)) throw InvariantViolation("Shape::kite: scale must be positive");
  std::vector<Vec2> verts;
  verts.reserve(kKiteSegments);
  for (int m = 0; m < kKiteSegments; ++m) {
    double t = 2.0 * M_PI * m / kKiteSegments;
    verts.push_back({center.x + scale * (std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65),
                     center.y + scale * 1.5 * std::sin(t)});
  }
  return polygon(std::move(verts));
}

Shape Shape::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3)
    throw InvariantViolation("Shape::polygon: need at least 3 vertices");
  Shape s;
  s.kind_ = Kind::Polygon;
  s.vertices_ = std::move(vertices);
  s.bbox_min_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  s.bbox_max_ = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& v : s.vertices_) update_bbox(s.bbox_min_, s.bbox_max_, v);
  return s;
}

bool Shape::contains(Vec2 p) const {
  if (kind_ == Kind::Disk) {
    Vec2 d = p - center_;
    return dot(d, d) <= radius_ * radius_;
  }
  // Winding number with an explicit boundary check so edge points count as
  // inside regardless of orientation.
  size_t n = vertices_.size();
  int winding = 0;
  for (size_t a = 0; a < n; ++a) {
    Vec2 va = vertices_[a];
    Vec2 vb = vertices_[(a + 1) % n];
    if (on_segment(va, vb, p)) return true;
    if (va.y <= p.y) {
      if (vb.y > p.y && cross(vb - va, p - va) > 0.0) ++winding;
    } else {
      if (vb.y <= p.y && cross(vb - va, p - va) < 0.0) --winding;
    }
  }
  return winding != 0;
}

SupportMask::SupportMask(Grid2D grid, std::vector<unsigned char> inside)
    : grid_(grid), inside_(std::move(inside)) {
  if (static_cast<int>(inside_.size()) != grid_.point_count())
    throw InvariantViolation("SupportMask: flag count does not match grid");
  for (int f = 0; f < static_cast<int>(inside_.size()); ++f)
    if (inside_[f]) nodes_.push_back(f);
}

SupportMask rasterize(const Shape& shape, const Grid2D& grid) {
  double R = grid.halfwidth();
  Vec2 lo = shape.bbox_min();
  Vec2 hi = shape.bbox_max();
  if (!(lo.x > -R && lo.y > -R && hi.x < R && hi.y < R))
    throw ShapeOutOfBounds("rasterize: shape must fit strictly inside the grid box");

  int J = grid.halfcount();
  std::vector<unsigned char> inside(grid.point_count(), 0);
  for (int j = -J; j <= J; ++j)
    for (int i = -J; i <= J; ++i)
      if (shape.contains(grid.point(i, j))) inside[grid.index(i, j)] = 1;
  return SupportMask(grid, std::move(inside));
}

RealField coverage(const Shape& shape, const Grid2D& grid, int subsamples) {
  if (subsamples < 1) throw InvariantViolation("coverage: subsamples must be positive");
  const double R = grid.halfwidth();
  const Vec2 lo = shape.bbox_min();
  const Vec2 hi = shape.bbox_max();
  if (!(lo.x > -R && lo.y > -R && hi.x < R && hi.y < R))
    throw ShapeOutOfBounds("coverage: shape must fit strictly inside the grid box");

  const int J = grid.halfcount();
  const double h = grid.step();
  RealField cover(grid.point_count(), 0.0);
  for (int j = -J; j <= J; ++j) {
    for (int i = -J; i <= J; ++i) {
      const Vec2 p = grid.point(i, j);
      // A cell whose four corners and center agree is taken as uncut; the
      // boundary band gets the subsampled fraction.
      int corners_in = shape.contains(p) ? 1 : 0;
      for (int cy = -1; cy <= 1; cy += 2)
        for (int cx = -1; cx <= 1; cx += 2)
          corners_in += shape.contains({p.x + 0.5 * h * cx, p.y + 0.5 * h * cy}) ? 1 : 0;
      if (corners_in == 5) {
        cover[grid.index(i, j)] = 1.0;
        continue;
      }
      if (corners_in == 0) continue;
      int in = 0;
      for (int sy = 0; sy < subsamples; ++sy)
        for (int sx = 0; sx < subsamples; ++sx)
          if (shape.contains({p.x + h * ((sx + 0.5) / subsamples - 0.5),
                              p.y + h * ((sy + 0.5) / subsamples - 0.5)}))
            ++in;
      cover[grid.index(i, j)] = static_cast<double>(in) / (subsamples * subsamples);
    }
  }
  return cover;
}

}  // namespace nlscat
