#pragma once

#include <stdexcept>
#include <string>

namespace jtent {

// Base of every error raised by the library. Callers that only need to
// distinguish "our" failures from std failures catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an algorithm (e.g. Hermitian input) was violated.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Degenerate mode rotation: k_1 = k_2 = 0 leaves the privileged direction undefined.
class DegenerateTransformError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A computed quantity left its mathematically allowed range by more than
// floating-point noise, which indicates a pipeline bug.
class NumericalIntegrityError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace jtent
