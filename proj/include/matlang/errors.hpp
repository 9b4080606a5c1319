#pragma once

#include <stdexcept>
#include <string>

namespace matlang {

// Error taxonomy shared across the library. Every failure mode callers are
// expected to handle gets its own type so they can be caught selectively.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotSquare : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " at byte " + std::to_string(position)), pos(position) {}
  std::size_t pos;
};
struct SortError : Error {
  using Error::Error;
};
struct FragmentViolation : Error {
  using Error::Error;
};
struct EvalModeError : Error {
  using Error::Error;
};
struct OrderMismatch : Error {
  using Error::Error;
};
struct PreconditionFailed : Error {
  using Error::Error;
};
struct EigenvaluePairingFailure : Error {
  using Error::Error;
};
struct FormatError : Error {
  FormatError(const std::string& msg, std::size_t offset)
      : Error(msg + " at byte " + std::to_string(offset)), pos(offset) {}
  std::size_t pos;
};
struct RecoveryFailure : Error {
  using Error::Error;
};
struct StabilityViolation : Error {
  using Error::Error;
};
struct NotDistinguishable : Error {
  using Error::Error;
};
struct InternalFault : Error {
  using Error::Error;
};

}  // namespace matlang
