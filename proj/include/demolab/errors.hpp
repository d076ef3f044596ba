#pragma once

#include <stdexcept>
#include <string>

namespace demolab {

/// Base class for all demolab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero or negative matrix/vector dimensions, or mismatched shapes.
class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a nonempty index selection received an empty one.
class EmptySelectionError : public Error {
 public:
  using Error::Error;
};

/// An index fell outside [1, universe], or the universe did not match.
class IndexRangeError : public Error {
 public:
  using Error::Error;
};

/// Selected columns are numerically rank-deficient.
class SingularSelectionError : public Error {
 public:
  SingularSelectionError(const std::string& what, double smallest, double largest)
      : Error(what), smallest_singular_value(smallest), largest_singular_value(largest) {}
  double smallest_singular_value;
  double largest_singular_value;
};

/// Input claimed to be a projector is not symmetric/idempotent within tolerance.
class ContractViolationError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive subset enumeration would exceed the configured budget.
class EnumerationTooLargeError : public Error {
 public:
  using Error::Error;
};

/// An operation precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Iteration failed to converge or produced non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Greedy solver selected a rank-deficient column set.
class DegenerateSelectionError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written, or its contents are malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace demolab
