#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq {

// Two trajectories X_0..X_k and X*_0..X*_k with identical history before
// time 0 and identical innovations e_1..e_k; only e_0 differs (e_0 versus an
// independent copy e_0').
struct CoupledPair {
  std::vector<double> original;
  std::vector<double> coupled;
  double innovation = 0.0;        // e_0 driving `original`
  double innovation_prime = 0.0;  // e_0' driving `coupled`
  double start = 0.0;  // common state X_{-1}; Markov families only
  std::vector<double> shared_innovations;  // e_1..e_k
};

struct CouplingOptions {
  // Burn-in before time 0; defaults to default_burn_in(model).
  std::optional<std::size_t> burn_in;
  // Exchange e_0 and e_0' (and hence the roles of the two paths).
  bool swap_time_zero = false;
};

// Draw order for a seed: pre-sample history, then e_0, e_0', then e_1..e_k.
CoupledPair simulate_coupled(const TimeSeriesModel& model, std::size_t k, std::uint64_t seed,
                             const CouplingOptions& options = {});

struct DeltaEstimate {
  std::size_t k = 0;
  double delta_hat = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
};

inline constexpr std::size_t kMinDeltaReplications = 100;

// delta_k = sd(X_k - X*_k) from independent coupled replications; two-pass
// variance, delta-method standard error. Throws DomainError for fewer than
// kMinDeltaReplications replications.
DeltaEstimate estimate_delta(const TimeSeriesModel& model, std::size_t k, std::size_t replications,
                             std::uint64_t seed, unsigned threads = 1);

// delta_0..delta_{k_max} from the same replications (one path of length
// k_max per replication). Lag k of this profile equals estimate_delta(k)
// for the same seed.
std::vector<DeltaEstimate> estimate_delta_profile(const TimeSeriesModel& model, std::size_t k_max,
                                                  std::size_t replications, std::uint64_t seed,
                                                  unsigned threads = 1);

// Pathwise check of |X_k - X*_k| <= rho |X_{k-1} - X*_{k-1}| along a pair.
// The paths are floating-point, so each lag gets the rounding allowance of
// one multiply and one add: eps (rho (|X_{k-1}| + |X*_{k-1}|) + |X_k| + |X*_k|).
// On a branch where r is linear the true inequality is an equality, and
// without the allowance one rounding step is enough to break it.
struct ContractionCheck {
  bool holds = true;
  std::size_t first_violation = 0;  // lag, valid when !holds
  double worst_ratio = 0.0;         // max |d_k| / |d_{k-1}| over lags with d_{k-1} != 0
};
ContractionCheck check_pathwise_contraction(const CoupledPair& pair, double rho);

struct SummabilityReport {
  bool conclusive = false;  // at least two lags above the noise floor
  std::vector<std::size_t> lags_used;
  double slope = 0.0;  // least-squares slope of ln delta_k on k
  double intercept = 0.0;
  double rho = 0.0;
  double tolerance = 0.0;
  bool decay_consistent = false;  // slope <= ln rho + tolerance
  double partial_sum = 0.0;       // sum of estimated delta_k
  double tail_bound = 0.0;        // geometric bound on the unobserved tail
  double certificate = 0.0;       // partial_sum + tail_bound
};

// Lags with delta_hat <= 5 std_error are treated as noise and excluded from
// the decay fit. deltas must start at k = 0 with consecutive lags.
SummabilityReport check_summability(std::span<const DeltaEstimate> deltas, double rho, double tolerance = 0.05);

// "k,delta_hat,std_error,replications" rows, 17 significant digits.
std::string delta_csv(std::span<const DeltaEstimate> deltas);

}  // namespace polyfreq
