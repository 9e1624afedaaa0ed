#pragma once

#include <stdexcept>
#include <string>

namespace leibenson {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation (negative radius, t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exponent or level outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: grids, run settings, files, campaign blocks.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value surfaced by an operator or an update.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Least-squares fit could not be formed on the requested window.
class FitError : public Error {
 public:
  using Error::Error;
};

/// A check that does not apply to the given run (e.g. smoothing bounds on a blow-up run).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Bisection bracket whose endpoints share the same verdict.
class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace leibenson
