#pragma once

#include <stdexcept>
#include <string>

namespace mnorm {

/// An enumeration or search would exceed its configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mnorm
