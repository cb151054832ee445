#include "polyfreq/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "polyfreq/error.hpp"
#include "polyfreq/normal.hpp"

namespace polyfreq {

namespace {

double weight_for(double x, std::int64_t k, double b) {
  return std::clamp(0.5 - static_cast<double>(k) + x / b, 0.0, 1.0);
}

}  // namespace

double u_weight(double x, const BinningScheme& scheme) {
  return weight_for(x, scheme.midpoint_index(x), scheme.bin_width());
}

double fp_eval(const SparseHistogram& h, double x) {
  const BinningScheme& scheme = h.scheme();
  const std::int64_t k = scheme.midpoint_index(x);
  // At a knot x / b may round, leaving u an ulp short of 1.
  if (x == scheme.midpoint(k)) return h.density(k);
  const double u = weight_for(x, k, scheme.bin_width());
  // tau_{b/2} A_n F_n (x) = f_n(x - b/2) lives in bin k - 1,
  // tau_{-b/2} A_n F_n (x) = f_n(x + b/2) in bin k.
  return (1.0 - u) * h.density(k - 1) + u * h.density(k);
}

double fp_eval_classic(const SparseHistogram& h, double x) {
  if (!std::isfinite(x)) throw DomainError("frequency polygon needs a finite point");
  const double b = h.bin_width();
  const double t = x / b;
  auto k = static_cast<std::int64_t>(std::ceil(t - 0.5));
  const auto lower_end = [b](std::int64_t j) { return static_cast<double>(j) * b - 0.5 * b; };
  while (lower_end(k + 1) < x) ++k;
  while (lower_end(k) >= x) --k;
  const double kd = static_cast<double>(k);
  return (0.5 + kd - t) * histogram_eval(h, kd * b) + (0.5 - kd + t) * histogram_eval(h, (kd + 1.0) * b);
}

double stone_bandwidth(std::uint64_t n) {
  if (n < 2) throw DomainError("Stone bandwidth needs n >= 2");
  const double nd = static_cast<double>(n);
  return std::cbrt(std::log(nd) / nd);
}

double kde_eval_naive(std::span<const double> sample, double bandwidth, double x) {
  if (sample.empty()) throw DomainError("KDE needs a nonempty sample");
  if (!(bandwidth > 0.0)) throw DomainError("KDE bandwidth must be positive");
  // exp(-t) is exactly 0 in double precision for t > 745.14; skipping
  // those terms changes no bits and avoids the slow underflow path.
  constexpr double kUnderflow = 745.2;
  const double inv_h = 1.0 / bandwidth;
  double sum = 0.0;
  for (double xi : sample) {
    const double z = (x - xi) * inv_h;
    const double t = 0.5 * z * z;
    if (t < kUnderflow) sum += std::exp(-t);
  }
  return sum / (static_cast<double>(sample.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
}

DensityEstimate DensityEstimate::histogram(SparseHistogram h) {
  DensityEstimate e(EstimatorKind::histogram, h.bin_width());
  e.hist_ = std::make_shared<const SparseHistogram>(std::move(h));
  return e;
}

DensityEstimate DensityEstimate::frequency_polygon(SparseHistogram h) {
  DensityEstimate e(EstimatorKind::frequency_polygon, h.bin_width());
  e.hist_ = std::make_shared<const SparseHistogram>(std::move(h));
  return e;
}

DensityEstimate DensityEstimate::kde(std::vector<double> sample, double bandwidth) {
  if (sample.empty()) throw DomainError("KDE needs a nonempty sample");
  if (!(bandwidth > 0.0)) throw DomainError("KDE bandwidth must be positive");
  DensityEstimate e(EstimatorKind::kde_baseline, bandwidth);
  e.sample_ = std::make_shared<const std::vector<double>>(std::move(sample));
  return e;
}

double DensityEstimate::operator()(double x) const {
  switch (kind_) {
    case EstimatorKind::histogram: return histogram_eval(*hist_, x);
    case EstimatorKind::frequency_polygon: return fp_eval(*hist_, x);
    case EstimatorKind::kde_baseline: return kde_eval_naive(*sample_, bandwidth_, x);
  }
  return 0.0;
}

double DensityEstimate::max_slope() const {
  switch (kind_) {
    case EstimatorKind::histogram:
      return std::numeric_limits<double>::infinity();
    case EstimatorKind::frequency_polygon: {
      double steepest = 0.0;
      for (const auto& [z, c] : hist_->counts()) {
        const double d = hist_->density(z);
        steepest = std::max({steepest, std::fabs(d - hist_->density(z - 1)),
                             std::fabs(d - hist_->density(z + 1))});
      }
      return steepest / bandwidth_;
    }
    case EstimatorKind::kde_baseline:
      // |phi'| <= phi(1) for the standard normal kernel.
      return normal_pdf(1.0) / (bandwidth_ * bandwidth_);
  }
  return 0.0;
}

}  // namespace polyfreq
