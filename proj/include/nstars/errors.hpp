#pragma once

#include <stdexcept>
#include <string>

namespace nstars {

// Base for every error raised by the library. The CLI maps subclasses to exit
// codes (2 for invalid input, 3 for insufficient data).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Closed-form Gamma sum evaluated at a - b + 1 == 0.
class SingularIdentity : public Error {
 public:
  using Error::Error;
};

class DivergentSum : public Error {
 public:
  using Error::Error;
};

class DivergentMoment : public Error {
 public:
  using Error::Error;
};

class EmptySampler : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace nstars
