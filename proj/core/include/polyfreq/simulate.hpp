#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq {

// Throws ModelError if the model is not stationary (ARMA root check), not
// contractive (TAR, NLAR), or otherwise malformed.
void validate_model(const TimeSeriesModel& model);

// Result of the sampled finite-difference Lipschitz check for an NLAR map.
struct LipschitzCheck {
  bool consistent = false;
  double observed = 0.0;  // largest |r(x+h) - r(x)| / h seen
};
LipschitzCheck check_lipschitz(const NlarModel& model, double half_range = 50.0, std::size_t points = 200001);

// Geometric forgetting rate: largest AR root modulus, TAR max(|a|,|b|), NLAR rho,
// 0 for a finite linear process.
double contraction_proxy(const TimeSeriesModel& model);

// max(1000, 50 * ceil(1 / (1 - rho))); 0 for linear processes, which are
// simulated exactly from their noise buffer.
std::size_t default_burn_in(const TimeSeriesModel& model);

// Number of innovations simulate_from_innovations consumes.
std::size_t innovations_required(const TimeSeriesModel& model, std::size_t n, std::size_t burn_in);

// Drives the recursion with a caller-supplied innovation buffer. Recursive
// families start from zero pre-sample values, so the first state is the
// first innovation (plus the ARMA intercept), run burn_in steps and return
// the next n. A linear process returns X_t = mean + sum_k a_k e[t + K - k].
std::vector<double> simulate_from_innovations(const TimeSeriesModel& model, std::span<const double> innovations,
                                              std::size_t n, std::size_t burn_in);

// Seeded simulation; burn_in must be at least default_burn_in(model).
std::vector<double> simulate(const TimeSeriesModel& model, std::size_t n, std::size_t burn_in, std::uint64_t seed);
std::vector<double> simulate(const TimeSeriesModel& model, std::size_t n, std::uint64_t seed);

}  // namespace polyfreq
