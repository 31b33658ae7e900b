#pragma once

#include <stdexcept>
#include <string>

namespace specc {

enum class Severity { Error, Warning };

// Base for every error the engines raise; the CLI maps subclasses to exit codes.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The specification was rejected (validation or analysis); exit status 2.
struct RejectError : SpecError {
  using SpecError::SpecError;
};

// A query failed at run time (range, mode, unsupported...); exit status 1.
struct QueryError : SpecError {
  using SpecError::SpecError;
};

struct AnalysisError : RejectError {
  using RejectError::RejectError;
};

struct ModeError : QueryError {
  using QueryError::QueryError;
};

struct RangeError : QueryError {
  using QueryError::QueryError;
};

struct UnsupportedError : QueryError {
  using QueryError::QueryError;
};

struct MembershipError : QueryError {
  using QueryError::QueryError;
};

struct EmptyError : QueryError {
  using QueryError::QueryError;
};

struct InsufficientTermsError : QueryError {
  using QueryError::QueryError;
};

struct TableLimitError : QueryError {
  using QueryError::QueryError;
};

}  // namespace specc
