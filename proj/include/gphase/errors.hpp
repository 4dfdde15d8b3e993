#pragma once

#include <stdexcept>
#include <string>

namespace gphase {

// Broken precondition on a public operation (bad dimensions, zero vectors, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for every failure of the numerical pipeline. The CLI maps these to
// exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BranchPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationBudgetError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EigenvalueOnContourError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class WindingResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Failure of a transported loop at one contour sample; carries the index.
class SampleError : public NumericalError {
 public:
  SampleError(std::size_t index, const std::string& what)
      : NumericalError("contour sample " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gphase
