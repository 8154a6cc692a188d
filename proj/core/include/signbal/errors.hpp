#pragma once

#include <stdexcept>
#include <string>

namespace signbal {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
  explicit NotPrimeError(unsigned p)
      : Error("characteristic " + std::to_string(p) + " is not prime") {}
};

struct ReducibleModulusError : Error {
  using Error::Error;
};

struct NotSupportedError : Error {
  using Error::Error;
};

struct SpecMismatchError : Error {
  SpecMismatchError() : Error("operands belong to different fields") {}
  using Error::Error;
};

struct DivisionByZeroError : Error {
  DivisionByZeroError() : Error("division by zero") {}
};

struct OutOfRangeError : Error {
  using Error::Error;
};

struct ShapeMismatchError : Error {
  using Error::Error;
};

struct SingularError : Error {
  SingularError() : Error("matrix is singular") {}
  using Error::Error;
};

struct WrongFieldError : Error {
  using Error::Error;
};

struct NotRootUniformError : Error {
  NotRootUniformError()
      : Error("cyclic reduction has a non-uniform tail; evaluation at a "
              "nontrivial root is not determined by this method") {}
};

struct NotCanonicalError : Error {
  using Error::Error;
};

struct NotSymplecticError : Error {
  using Error::Error;
};

struct SymmetryViolationError : Error {
  using Error::Error;
};

struct ClosureMismatchError : Error {
  using Error::Error;
};

struct NegativeExponentError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct CacheError : Error {
  using Error::Error;
};

}  // namespace signbal
