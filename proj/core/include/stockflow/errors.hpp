#pragma once

#include <stdexcept>
#include <string>

namespace stockflow {

/// Invalid scenario/configuration input (bad file, bad key, bad value).
/// Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure at runtime (lost positive definiteness, enumeration bound
/// exceeded, inconsistent state). Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stockflow
