#pragma once

#include <stdexcept>
#include <string>

namespace hullscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A parameter point lies outside the region where a map is defined.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Every requested degree pair excludes the point (it lies in each
/// exceptional sublevel set), so no bound can be derived there.
class ExclusionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input file. `field` names the offending JSON member.
class ParseError : public PreconditionError {
 public:
  ParseError(std::string field, const std::string& what)
      : PreconditionError(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A numerical routine could not reach its accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Null-vector extraction left a residual above the requested bound.
class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hullscope
