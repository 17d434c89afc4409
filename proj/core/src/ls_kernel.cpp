#include "nlscat/ls_kernel.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "nlscat/bessel.hpp"
#include "nlscat/errors.hpp"

namespace nlscat {
namespace {

using cplx = std::complex<double>;

// FFTW plan creation is not thread safe; execution through the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kEulerGamma = 0.57721566490153286;

// Integral of Phi_k over the grid cell [-h/2, h/2]^2.  Splits H0 into its
// logarithmic part and an analytic remainder; the closed forms below are
//   int_C |y|^2 dy            = h^4/6,
//   int_C |y|^4 dy            = 7 h^6/180,
//   int_C ln|y| dy            = h^2 (ln(h/2) + ln(2)/2 + pi/4 - 3/2),
//   int_C |y|^2 ln|y| dy      = h^4/4 ((2/3) ln(h/2) + ln(2)/3 + pi/12 - 5/9),
//   int_C |y|^4 ln|y| dy      = (h/2)^6 ((112/45) ln(h/2) + (56/45) ln(2)
//                                        + (8/45) pi - 104/75),
// and the series are truncated after the |y|^4 terms, leaving an O((kh)^6)
// relative defect, far below the cubature's own O(h^2 log h).
cplx cell_integral(double k, double h) {
  const double lh = std::log(0.5 * h);
  const double k2 = k * k, k4 = k2 * k2;
  const double i2 = h * h * h * h / 6.0;
  const double i4 = 7.0 * std::pow(h, 6) / 180.0;
  const double l0 = h * h * (lh + 0.5 * std::log(2.0) + M_PI / 4.0 - 1.5);
  const double l2 = 0.25 * h * h * h * h *
                    ((2.0 / 3.0) * lh + std::log(2.0) / 3.0 + M_PI / 12.0 - 5.0 / 9.0);
  const double l4 = std::pow(0.5 * h, 6) * ((112.0 / 45.0) * lh + (56.0 / 45.0) * std::log(2.0) +
                                            (8.0 / 45.0) * M_PI - 104.0 / 75.0);
  const double j0_part = h * h - 0.25 * k2 * i2 + k4 / 64.0 * i4;

  cplx lead = cplx(0.0, 0.25) - (std::log(0.5 * k) + kEulerGamma) / (2.0 * M_PI);
  cplx total = lead * j0_part;
  total -= (l0 - 0.25 * k2 * l2 + k4 / 64.0 * l4) / (2.0 * M_PI);
  total -= k2 / (8.0 * M_PI) * i2;
  total += 3.0 * k4 / (256.0 * M_PI) * i4;
  return total;
}

}  // namespace

int next_smooth_size(int n) {
  if (n < 1) throw InvariantViolation("next_smooth_size: n must be positive");
  for (int s = n;; ++s) {
    int r = s;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return s;
  }
}

class ConvolutionKernel::Workspace {
public:
  explicit Workspace(int size) : size_(size) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_ * size_));
    if (!buf_) throw std::bad_alloc();
  }
  ~Workspace() { fftw_free(buf_); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  fftw_complex* data() { return buf_; }
  int size() const { return size_; }

private:
  int size_;
  fftw_complex* buf_;
};

struct ConvolutionKernel::Impl {
  Grid2D grid;
  double k;
  int fft_size = 0;
  ComplexField multiplier;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Impl(const Grid2D& g, double wavenumber) : grid(g), k(wavenumber) {
    if (!(k > 0.0)) throw InvariantViolation("ConvolutionKernel: wavenumber must be positive");
    const int n = grid.points_per_axis();
    const double h = grid.step();
    const int S = next_smooth_size(2 * n - 1);
    fft_size = S;

    Workspace ws(S);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      forward = fftw_plan_dft_2d(S, S, ws.data(), ws.data(), FFTW_FORWARD, FFTW_ESTIMATE);
      backward = fftw_plan_dft_2d(S, S, ws.data(), ws.data(), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!forward || !backward) throw std::runtime_error("ConvolutionKernel: fftw planning failed");

    // Truncated kernel at lags (di, dj), wrapped periodically.
    cplx* buf = reinterpret_cast<cplx*>(ws.data());
    std::fill(buf, buf + S * S, cplx(0.0));
    const cplx diag = k * k * cell_integral(k, h) / (h * h);
    for (int dj = -(n - 1); dj <= n - 1; ++dj) {
      for (int di = -(n - 1); di <= n - 1; ++di) {
        cplx value;
        if (di == 0 && dj == 0) {
          value = diag;
        } else {
          double r = h * std::sqrt(double(di) * di + double(dj) * dj);
          value = k * k * cplx(0.0, 0.25) * hankel1_0(k * r);
        }
        int pi = (di % S + S) % S;
        int pj = (dj % S + S) % S;
        buf[pj * S + pi] = value;
      }
    }
    fftw_execute_dft(forward, ws.data(), ws.data());

    // Fold the cubature weight and the unnormalized inverse transform scale
    // into the multipliers.
    const double scale = h * h / (double(S) * S);
    multiplier.resize(size_t(S) * S);
    for (size_t i = 0; i < multiplier.size(); ++i) multiplier[i] = buf[i] * scale;
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

ConvolutionKernel::ConvolutionKernel(const Grid2D& grid, double wavenumber)
    : impl_(std::make_unique<Impl>(grid, wavenumber)) {}
ConvolutionKernel::~ConvolutionKernel() = default;
ConvolutionKernel::ConvolutionKernel(ConvolutionKernel&&) noexcept = default;
ConvolutionKernel& ConvolutionKernel::operator=(ConvolutionKernel&&) noexcept = default;

const Grid2D& ConvolutionKernel::grid() const { return impl_->grid; }
double ConvolutionKernel::wavenumber() const { return impl_->k; }
int ConvolutionKernel::fft_size() const { return impl_->fft_size; }
const ComplexField& ConvolutionKernel::multiplier() const { return impl_->multiplier; }

void ConvolutionKernel::WorkspaceDeleter::operator()(Workspace* ws) const { delete ws; }

ConvolutionKernel::WorkspacePtr ConvolutionKernel::make_workspace() const {
  return WorkspacePtr(new Workspace(impl_->fft_size));
}

void ConvolutionKernel::apply_potential(const ComplexField& f, ComplexField& out,
                                        Workspace& ws) const {
  const int n = impl_->grid.points_per_axis();
  const int S = impl_->fft_size;
  if (static_cast<int>(f.size()) != n * n)
    throw InvariantViolation("apply_potential: field size does not match grid");
  if (ws.size() != S)
    throw InvariantViolation("apply_potential: workspace belongs to another kernel size");

  cplx* buf = reinterpret_cast<cplx*>(ws.data());
  std::fill(buf, buf + size_t(S) * S, cplx(0.0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) buf[j * S + i] = f[j * n + i];

  fftw_execute_dft(impl_->forward, ws.data(), ws.data());
  const cplx* mult = impl_->multiplier.data();
  for (size_t i = 0; i < size_t(S) * S; ++i) buf[i] *= mult[i];
  fftw_execute_dft(impl_->backward, ws.data(), ws.data());

  out.resize(size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out[j * n + i] = buf[j * S + i];
}

ComplexField ConvolutionKernel::apply_potential(const ComplexField& f) const {
  auto ws = make_workspace();
  ComplexField out;
  apply_potential(f, out, *ws);
  return out;
}

ComplexField solve_linearized(const ConvolutionKernel& kernel, const RealField& q0,
                              const ComplexField& rhs, const LinearSolveConfig& config,
                              SolveStats* stats, const ComplexField* x0) {
  const size_t n = rhs.size();
  if (q0.size() != n)
    throw InvariantViolation("solve_linearized: contrast size does not match rhs");

  auto ws = kernel.make_workspace();
  ComplexField weighted(n), potential(n);
  LinearOperator op = [&](const ComplexField& in, ComplexField& out) {
    for (size_t i = 0; i < n; ++i) weighted[i] = q0[i] * in[i];
    kernel.apply_potential(weighted, potential, *ws);
    out.resize(n);
    for (size_t i = 0; i < n; ++i) out[i] = in[i] - potential[i];
  };

  ComplexField x = x0 ? *x0 : ComplexField(n, cplx(0.0));
  SolveStats s = gmres(op, rhs, x, config);
  if (stats) *stats = s;
  return x;
}

}  // namespace nlscat
