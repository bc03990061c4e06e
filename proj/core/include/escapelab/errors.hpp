#pragma once

#include <stdexcept>
#include <string>

namespace escapelab {

// Base class for all recoverable escape-lab errors. Everything deriving
// from Error is caused by bad input or a violated precondition; internal
// logic failures use plain std::logic_error instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NegativeTime : Error {
  using Error::Error;
};

struct InvalidSpacing : Error {
  using Error::Error;
};

struct InvalidPartition : Error {
  using Error::Error;
};

struct OutsideBall : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct InvalidLambda : Error {
  using Error::Error;
};

struct InvalidTau : Error {
  using Error::Error;
};

struct InvalidMotion : Error {
  using Error::Error;
};

struct NotAnExpansion : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

struct InvalidDimension : Error {
  using Error::Error;
};

}  // namespace escapelab
