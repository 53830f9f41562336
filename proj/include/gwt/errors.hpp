#pragma once

#include <stdexcept>
#include <string>

namespace gwt {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad labels, mismatched layouts, malformed scenarios.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-convergence, broken unitarity or positivity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gwt
