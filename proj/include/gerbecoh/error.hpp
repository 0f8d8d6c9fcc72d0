#pragma once

#include <stdexcept>
#include <string>

namespace gerbecoh {

/// Malformed input: wrong table dimensions, indices out of range, missing data.
/// Distinct from a verification returning false.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file could not be parsed or resolved.
class ParseError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// An operation was called on data violating its documented precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_structure(bool ok, const std::string& what) {
  if (!ok) throw StructuralError(what);
}

inline void require_pre(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace gerbecoh
