#pragma once

#include <stdexcept>
#include <string>

namespace isoconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters. `field()` names the offending parameter.
class ConstructionError : public Error {
 public:
  ConstructionError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// An operation needs an oracle (membership, support point, exact sampler,
/// analytic density bound) that the object does not provide.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Bisection or chord search failed to find a bracket.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// Rank-deficient or otherwise numerically degenerate input.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch between arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoconv
