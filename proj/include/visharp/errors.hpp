#pragma once

#include <stdexcept>
#include <string>

namespace visharp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  DimensionMismatch(long expected, long got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

struct UnboundedSet : Error {
  using Error::Error;
};

struct NoInteriorPoint : Error {
  using Error::Error;
};

struct CenterNotInterior : Error {
  using Error::Error;
};

struct DidNotConverge : Error {
  using Error::Error;
};

struct MissingLipschitzBound : Error {
  using Error::Error;
};

struct InsideSet : Error {
  using Error::Error;
};

struct SlaterViolation : Error {
  using Error::Error;
};

struct ZeroSubgradient : Error {
  using Error::Error;
};

struct NonFiniteOperatorValue : Error {
  using Error::Error;
};

struct NonPositiveArgument : Error {
  using Error::Error;
};

struct UnknownProblem : Error {
  UnknownProblem(const std::string& name)
      : Error("unknown builtin problem: " + name) {}
};

struct NonFiniteIterate : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

struct EmptyTrace : Error {
  using Error::Error;
};

struct DimensionTooLarge : Error {
  using Error::Error;
};

}  // namespace visharp
