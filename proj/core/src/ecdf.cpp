#include "polyfreq/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "polyfreq/error.hpp"

namespace polyfreq {

EmpiricalCdf::EmpiricalCdf(std::vector<double> sample) : sorted_(std::move(sample)) {
  if (sorted_.empty()) throw DomainError("empirical CDF needs at least one observation");
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (!std::isfinite(sorted_[i])) bad.push_back(i);
  }
  if (!bad.empty()) throw DataError("empirical CDF sample has non-finite values", std::move(bad));
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t EmpiricalCdf::count_at_most(double x) const {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

std::size_t EmpiricalCdf::count_below(double x) const {
  return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

double EmpiricalCdf::operator()(double x) const {
  return static_cast<double>(count_at_most(x)) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  return static_cast<double>(count_below(x)) / static_cast<double>(sorted_.size());
}

}  // namespace polyfreq
