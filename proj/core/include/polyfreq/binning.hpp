#pragma once

#include <cstdint>

namespace polyfreq {

// Regular grid of bins of width b anchored at 0. Bin z is the half-open
// interval (z*b, (z+1)*b]: the lower edge is excluded and the upper edge
// belongs to the bin, so every finite x lies in exactly one bin.
//
// Edges are the floating-point products z*b and every index computation is
// corrected against those products, which makes the assignment of a point
// to a bin reproducible bit for bit.
class BinningScheme {
 public:
  explicit BinningScheme(double bin_width);

  double bin_width() const noexcept { return width_; }

  // z such that edge(z) < x <= edge(z + 1).
  std::int64_t bin_index(double x) const;

  // Greatest grid point strictly below x.
  double bin_origin(double x) const { return edge(bin_index(x)); }

  double edge(std::int64_t z) const noexcept { return static_cast<double>(z) * width_; }
  double midpoint(std::int64_t z) const noexcept {
    return (static_cast<double>(z) + 0.5) * width_;
  }

  // k such that midpoint(k - 1) < x <= midpoint(k), i.e. the k of the
  // interval (k*b - b/2, k*b + b/2] holding x. The bins containing x - b/2
  // and x + b/2 are k - 1 and k respectively.
  std::int64_t midpoint_index(double x) const;

  friend bool operator==(const BinningScheme&, const BinningScheme&) = default;

 private:
  double width_;
};

// Free-function spelling of BinningScheme::bin_origin.
double bin_origin(double x, const BinningScheme& scheme);

}  // namespace polyfreq
