#pragma once

#include <span>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq::detail {

// simulate_from_innovations without validation or length checks.
std::vector<double> run_validated(const TimeSeriesModel& model, std::span<const double> e, std::size_t n,
                                  std::size_t burn_in);

}  // namespace polyfreq::detail
