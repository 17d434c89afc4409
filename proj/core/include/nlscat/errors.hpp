#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlscat {

// Violated model or data invariant (bad contrast, bad grid, shape outside the
// computational box, ...).  Distinct from ConfigError so the CLI can map the
// two to different exit codes.
class InvariantViolation : public std::runtime_error {
public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

class ShapeOutOfBounds : public InvariantViolation {
public:
  explicit ShapeOutOfBounds(const std::string& what) : InvariantViolation(what) {}
};

// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative linear solver ran out of iterations.
class NoConvergence : public std::runtime_error {
public:
  NoConvergence(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations(iterations), residual(residual) {}

  int iterations;
  double residual;
};

// The fixed point iteration stopped contracting.  Carries the relative
// increment history so callers can inspect the divergence pattern.
class NoContraction : public std::runtime_error {
public:
  NoContraction(const std::string& what, std::vector<double> increments)
      : std::runtime_error(what), increments(std::move(increments)) {}

  std::vector<double> increments;
};

// The sampling functional |<g, phi_z>| fell below the configured floor.
class DegenerateDenominator : public std::runtime_error {
public:
  explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

class AllCandidatesDegenerate : public std::runtime_error {
public:
  explicit AllCandidatesDegenerate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nlscat
