#pragma once

#include <stdexcept>
#include <string>

namespace phylomesh {

// Invalid configuration (bad mesh dims, non-power-of-two steady surface, ...).
// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (broken CSV, non-tree phylogeny, ...).
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phylomesh
