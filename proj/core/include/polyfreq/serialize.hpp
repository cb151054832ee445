#pragma once

#include <span>
#include <string>

#include "polyfreq/dependence.hpp"
#include "polyfreq/rate.hpp"

namespace polyfreq {

// Long format, one row per replication: n,b,replication,sup_error,wall_time_ms
std::string rate_records_csv(const RateReport& report);

// n,b,replication,delta_n_b,term1,term2
std::string modulus_csv(const RateReport& report);

std::string rate_report_to_json(const RateReport& report);

std::string delta_report_to_json(std::span<const DeltaEstimate> deltas, const SummabilityReport& summary);

}  // namespace polyfreq
