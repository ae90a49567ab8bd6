#pragma once

#include <stdexcept>
#include <string>

namespace fracstable {

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical method could not reach the requested accuracy. Carries the
/// best estimate it produced and the error bound it could certify.
class AccuracyFailure : public std::runtime_error {
 public:
  AccuracyFailure(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Closed form needs distinct roots and two of them (nearly) coincide.
class DegenerateRoots : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fracstable
