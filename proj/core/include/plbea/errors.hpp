#pragma once

#include <stdexcept>
#include <string>

namespace plbea {

// Base for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (bad vertex id, length mismatch, bad flag).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A formula is undefined for the given parameters (e.g. beta <= 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (edge lists, JSON graphs, result CSVs).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The instance exceeds a configured size limit (exact solver).
class RefusedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace plbea
