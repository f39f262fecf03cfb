#pragma once

#include <stdexcept>
#include <string>

namespace logdist {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input file does not match the expected schema (e.g. missing column).
class SchemaError : public Error {
public:
  using Error::Error;
};

/// A specific input row is malformed; carries the 1-based line number.
class RowError : public Error {
public:
  RowError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// A domain invariant or precondition was violated.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// An operation parameter is out of range or malformed.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A requested entity (case id, scenario name, ...) does not exist.
class LookupError : public Error {
public:
  using Error::Error;
};

/// A configurable resource budget would be exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// The discrete-event simulation could not complete.
class SimulationError : public Error {
public:
  using Error::Error;
};

}  // namespace logdist
