#pragma once

#include <stdexcept>
#include <string>

namespace sqkd {

// Invalid argument or precondition violation (bad Q, unsupported basis
// count, non-Hermitian input, ...). The CLI maps these to exit code 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A density matrix with an eigenvalue below the positivity tolerance.
class PositivityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numeric failures that are not caller mistakes. Exit code 2 in the CLI.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoPositiveRateError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class InsufficientDataError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class DegenerateInputError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace sqkd
