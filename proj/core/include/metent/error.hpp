#pragma once

#include <stdexcept>
#include <string>

namespace metent {

/// Bad caller input: malformed bodies, violated preconditions, bad flags.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A construction failed its own postcondition check. Never expected on
/// valid input; signals an implementation or numerical bug.
class CertificationError : public std::runtime_error {
 public:
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metent
