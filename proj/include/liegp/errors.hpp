#pragma once

#include <stdexcept>
#include <string>

namespace liegp {

// Invalid user-facing configuration: unsupported group/space, malformed
// signature, bad hyperparameters.  Maps to CLI exit code 2.
class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure after all recovery attempts (e.g. a covariance matrix
// that stays indefinite through the whole jitter ladder).  CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A level's Gram matrix stayed singular over the full retry budget: the
// requested fundamental-set size exceeds the true span dimension.
class DegenerateLevelError : public NumericalError {
 public:
  explicit DegenerateLevelError(const std::string& what) : NumericalError(what) {}
};

// File-system / stream failure.  CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liegp
