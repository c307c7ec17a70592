#pragma once

#include <stdexcept>
#include <string>

namespace bloofi {

// Invalid construction parameters (fpp outside (0,1), zero capacity, order < 2).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke an operation's contract: duplicate or unknown id, length or
// hash family mismatch, an update that would clear bits.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Filter file with a bad magic number or unsupported version.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filter file that is truncated or carries nonzero padding bits.
class CorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bloofi
