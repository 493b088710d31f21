#pragma once

#include <stdexcept>
#include <string>

namespace lfcap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two images or stacks that must agree in resolution do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A domain type invariant does not hold (negative density, non-orthonormal
// rotation, non-increasing layer depths, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class ScaleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class LifecycleError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfcap
