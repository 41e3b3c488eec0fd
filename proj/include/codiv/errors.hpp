#pragma once

#include <stdexcept>
#include <string>

namespace codiv {

// Argument outside an operation's precondition (bad r, k, q, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Query beyond the range a table was built for.
class OutOfRange : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// A configured budget (memory, enumeration size) would be exceeded.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requested enclosure width cannot be reached at the working precision.
class PrecisionLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace codiv
