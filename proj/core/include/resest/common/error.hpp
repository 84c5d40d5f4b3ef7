#pragma once

#include <stdexcept>
#include <string>

namespace resest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad ids, wrong graph kind, bad JSON).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Matrices, suites, gains or graphs that do not agree in size.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A dense computation was requested above its configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Gain synthesis could not produce a Schur-stable closed loop.
class SynthesisFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace resest
