#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "polyfreq/binning.hpp"
#include "polyfreq/histogram.hpp"

namespace polyfreq {

template <class F>
concept RealFunction = std::regular_invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

// Histogram operator A_n: (F(z b + b) - F(z b)) / b on the bin z holding x.
// With F = F_n this is the histogram density.
template <RealFunction F>
double apply_an(const F& cdf, const BinningScheme& scheme, double x) {
  const std::int64_t z = scheme.bin_index(x);
  return (cdf(scheme.edge(z + 1)) - cdf(scheme.edge(z))) / scheme.bin_width();
}

// Interpolation weight u_n(x) = 1/2 - k + x/b where k*b - b/2 < x <= k*b + b/2.
// At the half-grid points x = (k + 1/2) b this gives 1, which keeps the
// frequency polygon continuous there. Clamped to [0, 1] against rounding.
double u_weight(double x, const BinningScheme& scheme);

// B_n = (1 - u_n) tau_{b/2} A_n + u_n tau_{-b/2} A_n applied to an arbitrary
// bounded function. The shifted points x -+ b/2 are located on the grid by
// index (bins k - 1 and k for x in (k b - b/2, k b + b/2]) rather than by
// rounding x -+ b/2.
template <RealFunction F>
double apply_bn(const F& cdf, const BinningScheme& scheme, double x) {
  const std::int64_t k = scheme.midpoint_index(x);
  const double u = u_weight(x, scheme);
  const double b = scheme.bin_width();
  const double left = (cdf(scheme.edge(k)) - cdf(scheme.edge(k - 1))) / b;
  const double right = (cdf(scheme.edge(k + 1)) - cdf(scheme.edge(k))) / b;
  return (1.0 - u) * left + u * right;
}

// Frequency polygon g_n = B_n F_n evaluated from the histogram: two count
// lookups per point, independent of n.
double fp_eval(const SparseHistogram& h, double x);

// Classical form (1/2 + k - x/b) f_n(k b) + (1/2 - k + x/b) f_n((k+1) b).
// Kept as an independent check of fp_eval.
double fp_eval_classic(const SparseHistogram& h, double x);

// (ln n / n)^(1/3). Throws DomainError for n < 2.
double stone_bandwidth(std::uint64_t n);

// Gaussian-kernel KDE, O(n) per query. Only a baseline for comparisons.
double kde_eval_naive(std::span<const double> sample, double bandwidth, double x);

enum class EstimatorKind { histogram, frequency_polygon, kde_baseline };

// Immutable density estimate; cheap to copy (shares its backing data).
class DensityEstimate {
 public:
  static DensityEstimate histogram(SparseHistogram h);
  static DensityEstimate frequency_polygon(SparseHistogram h);
  static DensityEstimate kde(std::vector<double> sample, double bandwidth);

  EstimatorKind kind() const noexcept { return kind_; }
  // Null for the KDE baseline.
  const SparseHistogram* backing_histogram() const noexcept { return hist_.get(); }
  double bandwidth() const noexcept { return bandwidth_; }

  double operator()(double x) const;

  // Largest |slope| of the estimate: exact for the frequency polygon, the
  // kernel bound for the KDE, +inf for the (discontinuous) histogram.
  double max_slope() const;

 private:
  DensityEstimate(EstimatorKind kind, double bandwidth) : kind_(kind), bandwidth_(bandwidth) {}

  EstimatorKind kind_;
  double bandwidth_;
  std::shared_ptr<const SparseHistogram> hist_;
  std::shared_ptr<const std::vector<double>> sample_;
};

}  // namespace polyfreq
