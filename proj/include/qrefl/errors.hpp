#pragma once

#include <stdexcept>
#include <string>

namespace qrefl {

/// An iterative numerical method did not reach the requested accuracy.
/// Carries the best achieved error estimate.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Unknown species/surface or malformed catalog record.
class catalog_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent run or solver configuration (e.g. no admissible matching point).
class configuration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrefl
