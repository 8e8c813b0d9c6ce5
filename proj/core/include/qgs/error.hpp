#pragma once

#include <stdexcept>
#include <string>

namespace qgs {

/// Raised when an input violates a mathematical precondition (bad lengths,
/// out-of-range parameters, singular systems, ...). The CLI maps it to exit 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files. Messages carry the offending field path.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qgs
