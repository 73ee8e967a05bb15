#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bishop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Denominator too small relative to its scale at the evaluation point.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

class NotATangent : public Error {
 public:
  using Error::Error;
};

class StepCollapse : public Error {
 public:
  using Error::Error;
};

class PoleTooClose : public Error {
 public:
  using Error::Error;
};

class NoPoleFound : public Error {
 public:
  using Error::Error;
};

class CurvesTooClose : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace bishop
