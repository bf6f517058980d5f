#pragma once

#include <stdexcept>
#include <string>

namespace spherefold {

// Invalid input: bad geometry, out-of-range lengths, malformed documents.
// Maps to CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical guarantee failed to hold numerically. Indicates a bug or
// numerical breakdown, never bad user input. Maps to CLI exit code 2.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spherefold
