#pragma once

#include <stdexcept>

namespace etreg {

/// Base class for all etreg errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear solve met a (numerically) singular system, or a matrix failed
/// the conditioning gate (estimated 1-norm condition above kConditionLimit).
struct SingularSystem : Error {
  using Error::Error;
};

/// A computation left the representable floating-point range.
struct Overflow : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotHurwitz : Error {
  using Error::Error;
};

struct NotControllable : Error {
  using Error::Error;
};

struct InvalidParams : Error {
  using Error::Error;
};

struct InvalidGain : Error {
  using Error::Error;
};

struct MissingSolution : Error {
  using Error::Error;
};

struct EmptyWindow : Error {
  using Error::Error;
};

struct BracketInvalid : Error {
  using Error::Error;
};

/// Integration blow-up: a simulated state stopped being finite.
struct NonFiniteState : Error {
  using Error::Error;
};

/// Malformed scenario file (carries line/field context in the message).
struct ParseError : Error {
  using Error::Error;
};

/// A scenario parsed but violates a dimensional or range constraint.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace etreg
