#pragma once

#include <stdexcept>
#include <string>

namespace nasq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
// Relative entropy is undefined (infinite) when the first argument has
// support outside the second's; signalled as an exception, never as a number.
struct SupportViolation : Error {
  using Error::Error;
};
struct ParamOutOfRange : Error {
  using Error::Error;
};
struct BadDimension : Error {
  using Error::Error;
};
struct BadRank : Error {
  using Error::Error;
};
struct WrongLength : Error {
  using Error::Error;
};
struct InfeasibleCoords : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct NotNpt : Error {
  using Error::Error;
};
struct UnsupportedKind : Error {
  using Error::Error;
};
struct NotEntangled : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  ConvergenceFailure(const std::string& what, double best)
      : Error(what), best_value(best) {}
  double best_value;
};

}  // namespace nasq
