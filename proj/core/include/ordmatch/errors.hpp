#pragma once

#include <stdexcept>
#include <string>

namespace ordmatch {

// Raised when an internal invariant fails at runtime (e.g. a mechanism
// probability computed outside [0,1), or a trial where SW exceeds OPT).
// Distinct from std::invalid_argument, which signals bad caller input.
class AssertionFailure : public std::logic_error {
 public:
  explicit AssertionFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ordmatch
