#pragma once

#include <stdexcept>
#include <string>

namespace qauth {

/// Root of every error raised by the library. Each subclass names one
/// failure category so callers (the CLI in particular) can map it to an
/// exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A party tried to act on a qubit it does not own, or otherwise broke
/// the locality discipline of a session.
class ProtocolLogicError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class UnclassifiableError : public Error {
 public:
  using Error::Error;
};

class NonlinearityError : public Error {
 public:
  using Error::Error;
};

class ComparisonError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class UnknownProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace qauth
