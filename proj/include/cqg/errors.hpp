#pragma once

#include <stdexcept>
#include <string>

namespace cqg {

/// Malformed or inconsistent arguments (mismatched sizes, bad parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input text that does not follow a grammar (words, group names, specs).
class ParseError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A configured size budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Valid request that no evaluation route exists for.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cqg
