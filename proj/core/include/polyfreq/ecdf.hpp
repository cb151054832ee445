#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polyfreq {

// Empirical distribution function F_n(x) = #{X_i <= x} / n over a sorted copy
// of the sample. Right-continuous with jumps of multiplicity/n.
class EmpiricalCdf {
 public:
  // Throws DomainError on an empty sample, DataError on non-finite entries.
  explicit EmpiricalCdf(std::vector<double> sample);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> sorted() const noexcept { return sorted_; }

  std::size_t count_at_most(double x) const;  // #{X_i <= x}
  std::size_t count_below(double x) const;    // #{X_i < x}

  double operator()(double x) const;  // F_n(x)
  double left_limit(double x) const;  // F_n(x-)

 private:
  std::vector<double> sorted_;
};

}  // namespace polyfreq
