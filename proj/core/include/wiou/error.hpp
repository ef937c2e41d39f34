#pragma once

#include <stdexcept>
#include <string>

namespace wiou {

// Environment failures: missing files, unreadable streams, filesystem errors.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Contract violations in supplied data or parameters: palette mismatches,
// shape disagreements, out-of-range options.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wiou
