#include "nlscat/gmres.hpp"

#include <cmath>

#include "nlscat/errors.hpp"

namespace nlscat {
namespace {

using cplx = std::complex<double>;

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

cplx dot_conj(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

SolveStats gmres(const LinearOperator& op, const std::vector<cplx>& rhs,
                 std::vector<cplx>& x, const LinearSolveConfig& config) {
  const size_t n = rhs.size();
  if (x.size() != n) x.assign(n, cplx(0.0));

  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    x.assign(n, cplx(0.0));
    return {0, 0.0};
  }
  // Squared accumulation overflows near sup 1e154; past that every norm and
  // Givens rotation is garbage, so refuse instead of iterating on it.
  if (!std::isfinite(rhs_norm))
    throw NoConvergence("gmres: right hand side norm is not finite", 0, rhs_norm);
  const double target = config.tolerance * rhs_norm;
  const int m = std::max(1, config.restart);

  std::vector<std::vector<cplx>> basis;
  std::vector<cplx> hess((m + 1) * m, cplx(0.0));  // column major, ld = m+1
  std::vector<cplx> cs(m), gamma(m + 1);
  std::vector<double> sn(m);
  std::vector<cplx> w(n), r(n);

  int total_iters = 0;
  double true_resid = 0.0;

  while (true) {
    // True residual r = rhs - op(x).
    op(x, r);
    for (size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    double beta = norm2(r);
    if (!std::isfinite(beta))
      throw NoConvergence("gmres: residual norm is not finite", total_iters, beta);
    true_resid = beta;
    if (beta <= target) return {total_iters, beta / rhs_norm};
    if (total_iters >= config.max_iterations) break;

    basis.assign(1, r);
    for (auto& c : basis[0]) c /= beta;
    std::fill(gamma.begin(), gamma.end(), cplx(0.0));
    gamma[0] = beta;

    int k = 0;
    for (; k < m && total_iters < config.max_iterations; ++k, ++total_iters) {
      op(basis[k], w);
      // Modified Gram-Schmidt.
      for (int i = 0; i <= k; ++i) {
        cplx hik = dot_conj(basis[i], w);
        hess[i + k * (m + 1)] = hik;
        for (size_t p = 0; p < n; ++p) w[p] -= hik * basis[i][p];
      }
      double hnext = norm2(w);
      hess[(k + 1) + k * (m + 1)] = hnext;

      // Apply the accumulated Givens rotations to the new column, then form
      // the rotation that annihilates the subdiagonal entry.
      for (int i = 0; i < k; ++i) {
        cplx t = hess[i + k * (m + 1)];
        hess[i + k * (m + 1)] = cs[i] * t + sn[i] * hess[i + 1 + k * (m + 1)];
        hess[i + 1 + k * (m + 1)] = -sn[i] * t + std::conj(cs[i]) * hess[i + 1 + k * (m + 1)];
      }
      cplx hkk = hess[k + k * (m + 1)];
      double denom = std::sqrt(std::norm(hkk) + hnext * hnext);
      if (denom == 0.0) { ++k; ++total_iters; break; }
      cs[k] = std::conj(hkk) / denom;
      sn[k] = hnext / denom;
      hess[k + k * (m + 1)] = cs[k] * hkk + sn[k] * hnext;
      gamma[k + 1] = -sn[k] * gamma[k];
      gamma[k] = cs[k] * gamma[k];

      bool happy = hnext <= 1e-14 * std::abs(hess[k + k * (m + 1)]);
      if (std::abs(gamma[k + 1]) <= target || happy) { ++k; ++total_iters; break; }

      basis.push_back(w);
      for (auto& c : basis[k + 1]) c /= hnext;
    }

    // Back substitution for the k-dimensional least squares solution.
    std::vector<cplx> ym(k, cplx(0.0));
    for (int i = k - 1; i >= 0; --i) {
      cplx s = gamma[i];
      for (int j = i + 1; j < k; ++j) s -= hess[i + j * (m + 1)] * ym[j];
      ym[i] = s / hess[i + i * (m + 1)];
    }
    for (int i = 0; i < k; ++i)
      for (size_t p = 0; p < n; ++p) x[p] += ym[i] * basis[i][p];
  }

  throw NoConvergence("gmres: no convergence within iteration budget", total_iters,
                      true_resid / rhs_norm);
}

}  // namespace nlscat
