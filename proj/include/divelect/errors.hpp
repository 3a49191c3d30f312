#pragma once

#include <stdexcept>
#include <string>

namespace divelect {

/// Malformed input data (files, committees, flags). CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested operation is not configured correctly (e.g. weighted index
/// without label weights). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Committee fails validity against its election. CLI exit code 2.
class InvalidCommitteeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant that should hold by construction was violated.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An instance exceeds a configured size or memory cap. CLI exit code 3.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace divelect
