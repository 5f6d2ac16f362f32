#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tauber {

/// Malformed arguments, files, or dimension mismatches.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure of an underlying solver (LP cycling guard, bad certificate).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-point iteration hit its cap. Carries the last iterate.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

/// Arithmetic-progression argmax landed on the edge of its search window.
class WindowError : public std::runtime_error {
 public:
  WindowError(const std::string& what, double lambda) : std::runtime_error(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

}  // namespace tauber
