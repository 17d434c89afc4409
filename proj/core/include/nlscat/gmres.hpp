#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nlscat {

struct LinearSolveConfig {
  double tolerance = 1e-10;   // relative residual target
  int max_iterations = 2000;  // total inner iterations across restarts
  int restart = 50;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // final true relative residual
};

using LinearOperator =
    std::function<void(const std::vector<std::complex<double>>&, std::vector<std::complex<double>>&)>;

// Restarted GMRES for a general complex operator, no preconditioner.
// Solves op(x) = rhs starting from x (used as initial guess, overwritten).
// Convergence is certified with a true residual at each restart; throws
// NoConvergence when the iteration budget runs out.
SolveStats gmres(const LinearOperator& op, const std::vector<std::complex<double>>& rhs,
                 std::vector<std::complex<double>>& x, const LinearSolveConfig& config);

}  // namespace nlscat
