#pragma once

#include <stdexcept>
#include <string>

namespace lh {

struct RingMismatchError : std::runtime_error {
  explicit RingMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an exact division leaves a nonzero remainder.  The message
/// carries a rendering of the remainder for diagnostics.
struct DivisibilityError : std::runtime_error {
  explicit DivisibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroDenominatorError : std::runtime_error {
  explicit ZeroDenominatorError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidAffineError : std::runtime_error {
  explicit InvalidAffineError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SequenceDomainError : std::runtime_error {
  explicit SequenceDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SemiclassicalRequiredError : std::runtime_error {
  explicit SemiclassicalRequiredError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ClassicalRequiredError : std::runtime_error {
  explicit ClassicalRequiredError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateOdeError : std::runtime_error {
  explicit DegenerateOdeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lh
