#pragma once

#include <stdexcept>
#include <string>

namespace abduction {

/// Raised when an operation's precondition or contract is violated.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace abduction
