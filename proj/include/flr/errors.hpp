#pragma once

#include <stdexcept>
#include <string>

namespace flr {

// Bad inputs: dimensions, ranges, unknown config keys, infeasible specs.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// NaN/Inf reached the numerics; the run aborts rather than train on garbage.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called before its required state existed.
struct StateError : std::runtime_error {
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

// Violations of the federation protocol (empty aggregation, shape drift).
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flr
