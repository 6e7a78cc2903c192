#pragma once

#include <stdexcept>
#include <string>

namespace nrt {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument outside the physical domain (T <= 0, negative length, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent user configuration.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A formula hit a pole, e.g. a velocity class resonant with a single-photon
// transition, where the far-detuned reduction is meaningless.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Linear solve failed or was too ill-conditioned to trust.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& message, double condition_estimate)
      : Error(message), condition_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

// The steady state is not unique (the Liouvillian has a multi-dimensional
// kernel), e.g. with every field switched off.
class DegenerateSteadyStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& message, double estimate, double achieved_rel_error)
      : Error(message), estimate_(estimate), achieved_(achieved_rel_error) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_relative_error() const noexcept { return achieved_; }

 private:
  double estimate_;
  double achieved_;
};

// No point of the optimisation box satisfies the insertion-loss constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace nrt
