#pragma once

#include <stdexcept>
#include <string>

namespace betafin {

/// Base class for every error raised by the library on bad input or an
/// exhausted budget.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NoRootAboveOne : public Error {
 public:
  using Error::Error;
};

class Reducible : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class OrbitBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ClosureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class GoldenRatioPrecondition : public Error {
 public:
  GoldenRatioPrecondition() : Error("beta is smaller than the golden ratio") {}
};

class NotCubicPisot : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class NotUnit : public Error {
 public:
  using Error::Error;
};

class F1Unknown : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The +1 carry cascade ran past the first free block.
class CascadeOverrun : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace betafin
