#pragma once

#include <stdexcept>
#include <string>

namespace gwmlp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension mismatch between matrices or between a model and its data.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration value, unknown key, or inconsistent settings.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input data: schema, parse, temporal or alignment problems.
class DataError : public Error {
public:
  using Error::Error;
};

/// Non-finite values where finite ones are required (NaN loss, Inf gradient).
class NumericError : public Error {
public:
  using Error::Error;
};

/// Corrupt or truncated model file; the message names the failed section.
class ModelFormatError : public Error {
public:
  using Error::Error;
};

} // namespace gwmlp
