#pragma once

#include <stdexcept>
#include <string>

namespace gridarena {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate, fold or linear index outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: unknown engine kind, bad parameter, empty budget.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

/// A score table is missing at least one (arm, fold) cell.
class CompletenessError : public DataError {
 public:
  using DataError::DataError;
};

/// An aggregate whose every contributing term is degenerate.
class UndefinedAggregateError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridarena
