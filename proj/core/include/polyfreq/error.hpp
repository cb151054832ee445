#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyfreq {

// Invalid argument to a numerical routine (non-finite point, n < 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad input data. Carries the offending positions (sample indices or
// 1-based line numbers, depending on the producer).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::vector<std::size_t> positions = {})
      : std::runtime_error(what), positions_(std::move(positions)) {}

  const std::vector<std::size_t>& positions() const noexcept { return positions_; }

 private:
  std::vector<std::size_t> positions_;
};

// A time-series model that fails its validity checks (unit root,
// non-contractive map, unsupported noise for an exact marginal).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative routine did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_change)
      : std::runtime_error(what), last_change_(last_change) {}

  double last_change() const noexcept { return last_change_; }

 private:
  double last_change_;
};

}  // namespace polyfreq
