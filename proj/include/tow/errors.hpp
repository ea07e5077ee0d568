#pragma once

#include <stdexcept>
#include <string>

namespace tow {

// Error taxonomy mirrored by the CLI exit codes: usage errors are handled by
// the argument parser (exit 2), DataError maps to exit 3, IoError to exit 4.
// Plain std::invalid_argument / std::domain_error mark programming-contract
// violations on library entry points.

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tow
