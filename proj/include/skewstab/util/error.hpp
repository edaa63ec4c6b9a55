#pragma once

#include <stdexcept>
#include <string>

namespace skewstab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed config, violated precondition, schema mismatch.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation that ran but could not deliver (non-convergence, range).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewstab
