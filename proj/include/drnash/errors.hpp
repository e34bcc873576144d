#pragma once

#include <stdexcept>
#include <string>

namespace drnash {

/// Scenario file could not be parsed into the documented structure
/// (malformed JSON, wrong type, unknown or missing key).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// A well-formed input violates a model invariant. The message names the
/// field and the rule.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace drnash
