#pragma once

#include <stdexcept>
#include <string>

namespace iklink {

/// Malformed input document or unreadable/unwritable file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates a model invariant or precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A planning instance with no admissible answer (e.g. an IK table column
/// with no solutions).
class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace iklink
