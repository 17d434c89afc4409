#include "nlscat/disk_reference.hpp"

#include <cmath>
#include <stdexcept>

#include "nlscat/bessel.hpp"
#include "nlscat/errors.hpp"

namespace nlscat {

namespace {

using cplx = std::complex<double>;

// J_n' and Y_n' via the downward connection f_n' = f_{n-1} - (n/x) f_n.
double jn_prime(int n, double x) {
  if (n == 0) return -bessel_jn_series(1, x);
  return bessel_jn_series(n - 1, x) - n / x * bessel_jn_series(n, x);
}

double yn_prime(int n, double x) {
  if (n == 0) return -bessel_yn_recurrence(1, x);
  return bessel_yn_recurrence(n - 1, x) - n / x * bessel_yn_recurrence(n, x);
}

cplx hn(int n, double x) { return cplx(bessel_jn_series(n, x), bessel_yn_recurrence(n, x)); }
cplx hn_prime(int n, double x) { return cplx(jn_prime(n, x), yn_prime(n, x)); }

cplx ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

double bessel_jn_series(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_jn_series: order must be nonnegative");
  if (x < 0.0) throw std::invalid_argument("bessel_jn_series: argument must be nonnegative");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double t = 0.25 * x * x;
  // leading coefficient (x/2)^n / n!
  double term = 1.0;
  for (int m = 1; m <= n; ++m) term *= 0.5 * x / m;
  double sum = term;
  for (int m = 1; m <= 200; ++m) {
    term *= -t / (m * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double bessel_yn_recurrence(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_yn_recurrence: order must be nonnegative");
  if (n == 0) return bessel_y0(x);
  if (n == 1) return bessel_y1(x);
  double prev = bessel_y0(x);
  double cur = bessel_y1(x);
  for (int m = 1; m < n; ++m) {
    const double next = 2.0 * m / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

DiskScattering::DiskScattering(double wavenumber, double contrast, double radius, int max_order)
    : k_(wavenumber), radius_(radius) {
  if (!(wavenumber > 0.0)) throw InvariantViolation("disk reference: wavenumber must be positive");
  if (!(radius > 0.0)) throw InvariantViolation("disk reference: radius must be positive");
  if (!(1.0 + contrast > 0.0))
    throw InvariantViolation("disk reference: contrast must keep 1 + q0 positive");
  k_interior_ = k_ * std::sqrt(1.0 + contrast);

  interior_.resize(max_order + 1);
  scattered_.resize(max_order + 1);
  const double ka = k_ * radius_;
  const double kda = k_interior_ * radius_;
  for (int n = 0; n <= max_order; ++n) {
    // Continuity of the field and its radial derivative across r = radius:
    //   a_n J_n(kd a) - b_n H_n(k a)    = i^n J_n(k a)
    //   a_n kd J_n'(kd a) - b_n k H_n'(k a) = i^n k J_n'(k a)
    const double jd = bessel_jn_series(n, kda);
    const double jdp = jn_prime(n, kda);
    const double j = bessel_jn_series(n, ka);
    const double jp = jn_prime(n, ka);
    const cplx h = hn(n, ka);
    const cplx hp = hn_prime(n, ka);
    const cplx rhs1 = ipow(n) * j;
    const cplx rhs2 = ipow(n) * k_ * jp;
    const cplx det = -jd * k_ * hp + k_interior_ * jdp * h;
    interior_[n] = (-rhs1 * k_ * hp + rhs2 * h) / det;
    scattered_[n] = (jd * rhs2 - k_interior_ * jdp * rhs1) / det;
  }
}

cplx DiskScattering::total_field(Vec2 x, double incident_angle) const {
  const double r = x.norm();
  const double theta = std::atan2(x.y, x.x) - incident_angle;
  const int max_order = static_cast<int>(interior_.size()) - 1;
  cplx sum = 0.0;
  if (r <= radius_) {
    sum = interior_[0] * bessel_jn_series(0, k_interior_ * r);
    for (int n = 1; n <= max_order; ++n)
      sum += 2.0 * interior_[n] * bessel_jn_series(n, k_interior_ * r) * std::cos(n * theta);
  } else {
    sum = ipow(0) * bessel_jn_series(0, k_ * r) + scattered_[0] * hn(0, k_ * r);
    for (int n = 1; n <= max_order; ++n) {
      const cplx radial = ipow(n) * bessel_jn_series(n, k_ * r) + scattered_[n] * hn(n, k_ * r);
      sum += 2.0 * radial * std::cos(n * theta);
    }
  }
  return sum;
}

cplx DiskScattering::scattered_field(Vec2 x, double incident_angle) const {
  const Vec2 d{std::cos(incident_angle), std::sin(incident_angle)};
  const cplx incident = std::exp(cplx(0.0, k_ * dot(d, x)));
  return total_field(x, incident_angle) - incident;
}

ComplexField DiskScattering::total_field_on_grid(const Grid2D& grid, double incident_angle) const {
  ComplexField field(grid.point_count());
  for (int f = 0; f < grid.point_count(); ++f) field[f] = total_field(grid.point(f), incident_angle);
  return field;
}

ComplexField DiskScattering::scattered_field_on_grid(const Grid2D& grid,
                                                     double incident_angle) const {
  ComplexField field(grid.point_count());
  for (int f = 0; f < grid.point_count(); ++f)
    field[f] = scattered_field(grid.point(f), incident_angle);
  return field;
}

}  // namespace nlscat
