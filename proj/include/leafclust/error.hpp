#pragma once

#include <stdexcept>
#include <string>

namespace leafclust {

/// Malformed or invalid input data (bad values, unparseable files, bad arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a computation stage on otherwise well-formed input.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace leafclust
