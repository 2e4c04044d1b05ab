#ifndef FLIGHT_ERROR_HPP
#define FLIGHT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flight {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A location or evaluation point escaped its admissible interval.
struct DomainError : Error {
  using Error::Error;
};

struct EmptyProfileError : Error {
  using Error::Error;
};

// Bad parameters passed to a constructor or operation.
struct ConfigError : Error {
  using Error::Error;
};

// A piecewise utility table is not concave.
struct ConcavityError : Error {
  ConcavityError(const std::string& msg, std::size_t index)
      : Error(msg), breakpoint_index(index) {}
  std::size_t breakpoint_index;
};

// Strict positivity of the utility is required but violated.
struct PositivityError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Non-finite value encountered during evaluation.
struct NumericalError : Error {
  using Error::Error;
};

// A check's own precondition (e.g. interior optimum) does not hold for
// this instance; the check is skipped rather than failed.
struct SkippedCheck : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace flight

#endif
