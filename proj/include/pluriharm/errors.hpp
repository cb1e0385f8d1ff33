#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pluriharm {

/// Malformed input: non-finite numbers, bad JSON, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition failed (point outside the domain, zero-measure set, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative solver or limit process did not converge.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, std::vector<double> history = {})
      : std::runtime_error(what), residual_(residual), history_(std::move(history)) {}

  double residual() const noexcept { return residual_; }
  /// Residuals or Cauchy gaps recorded before giving up.
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  double residual_;
  std::vector<double> history_;
};

/// The region is not simply connected (or not connected).
class TopologyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quadrature node coincides with a singularity of the integrand.
class QuadratureError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace pluriharm
