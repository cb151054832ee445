#include "polyfreq/binning.hpp"

#include <cmath>
#include <string>

#include "polyfreq/error.hpp"

namespace polyfreq {

namespace {

// Indices beyond this lose integer resolution in double arithmetic.
constexpr double kMaxIndex = 4503599627370496.0;  // 2^52

void require_finite(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("bin lookup requires a finite point, got " + std::to_string(x));
  }
}

std::int64_t initial_index(double scaled) {
  if (!(std::fabs(scaled) < kMaxIndex)) {
    throw DomainError("point is too far from the origin for the bin width");
  }
  return static_cast<std::int64_t>(std::ceil(scaled)) - 1;
}

}  // namespace

BinningScheme::BinningScheme(double bin_width) : width_(bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw DomainError("bin width must be positive and finite, got " + std::to_string(bin_width));
  }
}

std::int64_t BinningScheme::bin_index(double x) const {
  require_finite(x);
  std::int64_t z = initial_index(x / width_);
  while (edge(z + 1) < x) ++z;
  while (edge(z) >= x) --z;
  return z;
}

std::int64_t BinningScheme::midpoint_index(double x) const {
  require_finite(x);
  std::int64_t k = initial_index(x / width_ - 0.5) + 1;
  while (midpoint(k) < x) ++k;
  while (midpoint(k - 1) >= x) --k;
  return k;
}

double bin_origin(double x, const BinningScheme& scheme) { return scheme.bin_origin(x); }

}  // namespace polyfreq
