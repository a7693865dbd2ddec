// Exception hierarchy. Every error thrown by the library derives from Error.

#pragma once

#include <stdexcept>
#include <string>

namespace legifield {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (syntax, missing or unknown keys, wrong types).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

class PlacementError : public Error {
public:
  PlacementError(const std::string& what, long attempts)
      : Error(what), attempts_(attempts) {}
  long attempts() const noexcept { return attempts_; }

private:
  long attempts_;
};

class DegenerateSceneError : public Error {
public:
  using Error::Error;
};

class UnknownTargetError : public Error {
public:
  using Error::Error;
};

/// Evaluation point coincides with an obstacle axis.
class SingularityError : public Error {
public:
  using Error::Error;
};

class TooFewWaypointsError : public Error {
public:
  using Error::Error;
};

class TargetUnrankedError : public Error {
public:
  using Error::Error;
};

} // namespace legifield
