#pragma once

#include <stdexcept>
#include <string>

namespace gcnnvc {

/// Malformed input: bad sizes, out-of-range indices, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is not defined for this kind of object (e.g. group
/// composition on a non-closed grid discretization).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive work would exceed the configured enumeration budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gcnnvc
