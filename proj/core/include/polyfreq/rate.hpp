#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq {

enum class RateEstimator {
  frequency_polygon,
  histogram,
  truth,  // scores the truth against itself; every error is 0
};

struct RateOptions {
  RateEstimator estimator = RateEstimator::frequency_polygon;
  // b = bandwidth_scale * stone_bandwidth(n).
  double bandwidth_scale = 1.0;
  bool compute_modulus = true;
  bool check_decomposition = true;
  std::size_t bootstrap_resamples = 1000;
  unsigned threads = 0;
};

struct SupErrorRecord {
  std::uint64_t n = 0;
  double b = 0.0;
  double sup_error = 0.0;
  std::size_t eval_points = 0;
  std::size_t replication = 0;
  std::chrono::duration<double, std::milli> wall_time{};
};

struct ModulusRecord {
  std::uint64_t n = 0;
  double b = 0.0;
  std::size_t replication = 0;
  double delta_n_b = 0.0;
  double term1 = 0.0;  // sqrt(b ln n)
  double term2 = 0.0;  // b sqrt(ln n) ln ln n
};

// sup|g_n - f| <= 2 Delta_n(b) / (sqrt(n) b) + 2 sup|A_n F - f| + shift terms.
struct DecompositionRecord {
  std::uint64_t n = 0;
  std::size_t replication = 0;
  double sup_error = 0.0;
  double stochastic_term = 0.0;  // Delta_n(b) / (sqrt(n) b)
  double bias_term = 0.0;        // sup |A_n F - f| at the shifted points
  double shift_term = 0.0;       // sup|f(x - b/2) - f(x)| + sup|f(x + b/2) - f(x)|
  double bound = 0.0;
  bool holds = false;
};

struct RatePoint {
  std::uint64_t n = 0;
  double b = 0.0;
  double median_sup_error = 0.0;
  double mean_sup_error = 0.0;
  double median_modulus = 0.0;  // 0 when modulus is not computed
};

struct RateReport {
  std::vector<SupErrorRecord> records;  // ordered by n, then replication
  std::vector<ModulusRecord> modulus;
  std::vector<DecompositionRecord> decomposition;
  std::vector<RatePoint> per_n;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  // Slope of ln(median sup error) against ln n.
  double fitted_slope = 0.0;
  std::optional<std::pair<double, double>> slope_ci;  // 95% percentile bootstrap
  double target_slope = -1.0 / 3.0;
  // True when some median error is 0 (e.g. the truth scored against itself);
  // the slope is then not fitted.
  bool degenerate = false;
  // >= 5 distinct n spanning a ratio >= 64 with >= 10 replications.
  bool meets_design = false;
};

// n_min, 2 n_min, 4 n_min, ... up to n_max.
std::vector<std::uint64_t> geometric_sample_sizes(std::uint64_t n_min, std::uint64_t n_max);

// Least-squares slope of ln y on ln x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// For each n: simulate `reps` paths, estimate with b = scale * stone(n),
// score against the model's exact marginal on the b/10 grid. Per-task seeds
// are stream_seed(seed, n index, replication). Throws ModelError for models
// without a truth density, DomainError for n < 16, reps == 0 or fewer than
// two sample sizes.
RateReport rate_experiment(const TimeSeriesModel& model, std::span<const std::uint64_t> n_values,
                           std::size_t reps, std::uint64_t seed, const RateOptions& options = {});

}  // namespace polyfreq
