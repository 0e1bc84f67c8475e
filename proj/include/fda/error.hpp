#pragma once

#include <stdexcept>
#include <string>

namespace fda {

/// Raised when an operator receives arguments that violate its contract
/// (bad shapes, out-of-range parameters, inconsistent metadata).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace fda
