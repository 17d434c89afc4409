#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace nlscat {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Uniform tensor grid on [-R, R]^2 with nodes z_ij = (i h, j h),
// i, j = -J..J and h = R / J.  Storage is row major with i fastest and j
// running from -J upward.
class Grid2D {
public:
  Grid2D(double halfwidth, int halfcount);

  double halfwidth() const { return halfwidth_; }
  int halfcount() const { return halfcount_; }
  double step() const { return halfwidth_ / halfcount_; }
  int points_per_axis() const { return 2 * halfcount_ + 1; }
  int point_count() const { return points_per_axis() * points_per_axis(); }

  // i, j in [-J, J].
  int index(int i, int j) const {
    int n = points_per_axis();
    return (j + halfcount_) * n + (i + halfcount_);
  }
  Vec2 point(int i, int j) const { return {i * step(), j * step()}; }
  Vec2 point(int flat) const {
    int n = points_per_axis();
    int i = flat % n - halfcount_;
    int j = flat / n - halfcount_;
    return point(i, j);
  }

  bool operator==(const Grid2D& other) const {
    return halfwidth_ == other.halfwidth_ && halfcount_ == other.halfcount_;
  }

private:
  double halfwidth_;
  int halfcount_;
};

// Complex- and real-valued node data over a Grid2D.
using ComplexField = std::vector<std::complex<double>>;
using RealField = std::vector<double>;

double sup_norm(const ComplexField& f);
double sup_norm_diff(const ComplexField& a, const ComplexField& b);

}  // namespace nlscat
