#include "polyfreq/serialize.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "polyfreq/format.hpp"

namespace polyfreq {

namespace {

using nlohmann::ordered_json;

// JSON has no NaN; an unfitted slope is written as null.
ordered_json real_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

}  // namespace

std::string rate_records_csv(const RateReport& report) {
  std::ostringstream os;
  os << "n,b,replication,sup_error,wall_time_ms\n";
  for (const auto& r : report.records) {
    os << r.n << ',' << format_real(r.b) << ',' << r.replication << ',' << format_real(r.sup_error) << ','
       << format_real(r.wall_time.count()) << '\n';
  }
  return os.str();
}

std::string modulus_csv(const RateReport& report) {
  std::ostringstream os;
  os << "n,b,replication,delta_n_b,term1,term2\n";
  for (const auto& m : report.modulus) {
    os << m.n << ',' << format_real(m.b) << ',' << m.replication << ',' << format_real(m.delta_n_b) << ','
       << format_real(m.term1) << ',' << format_real(m.term2) << '\n';
  }
  return os.str();
}

std::string rate_report_to_json(const RateReport& report) {
  ordered_json doc;
  doc["seed"] = report.seed;
  doc["replications"] = report.replications;
  doc["target_slope"] = report.target_slope;
  doc["fitted_slope"] = real_or_null(report.fitted_slope);
  doc["slope_ci"] = report.slope_ci ? ordered_json::array({report.slope_ci->first, report.slope_ci->second})
                                    : ordered_json(nullptr);
  doc["degenerate"] = report.degenerate;
  doc["meets_design"] = report.meets_design;

  auto& per_n = doc["per_n"] = ordered_json::array();
  for (const auto& p : report.per_n) {
    per_n.push_back({{"n", p.n},
                     {"b", p.b},
                     {"median_sup_error", p.median_sup_error},
                     {"mean_sup_error", p.mean_sup_error},
                     {"median_modulus", p.median_modulus}});
  }
  auto& records = doc["records"] = ordered_json::array();
  for (const auto& r : report.records) {
    records.push_back({{"n", r.n},
                       {"b", r.b},
                       {"replication", r.replication},
                       {"sup_error", r.sup_error},
                       {"wall_time_ms", r.wall_time.count()}});
  }
  auto& modulus = doc["modulus"] = ordered_json::array();
  for (const auto& m : report.modulus) {
    modulus.push_back({{"n", m.n},
                       {"b", m.b},
                       {"replication", m.replication},
                       {"delta_n_b", m.delta_n_b},
                       {"term1", m.term1},
                       {"term2", m.term2}});
  }
  auto& decomposition = doc["decomposition"] = ordered_json::array();
  for (const auto& d : report.decomposition) {
    decomposition.push_back({{"n", d.n},
                             {"replication", d.replication},
                             {"sup_error", d.sup_error},
                             {"stochastic_term", d.stochastic_term},
                             {"bias_term", d.bias_term},
                             {"shift_term", d.shift_term},
                             {"bound", d.bound},
                             {"holds", d.holds}});
  }
  return doc.dump(2) + "\n";
}

std::string delta_report_to_json(std::span<const DeltaEstimate> deltas, const SummabilityReport& summary) {
  ordered_json doc;
  auto& rows = doc["deltas"] = ordered_json::array();
  for (const auto& d : deltas) {
    rows.push_back(
        {{"k", d.k}, {"delta_hat", d.delta_hat}, {"std_error", d.std_error}, {"replications", d.replications}});
  }
  doc["summability"] = {{"conclusive", summary.conclusive},
                        {"lags_used", summary.lags_used},
                        {"slope", real_or_null(summary.slope)},
                        {"intercept", real_or_null(summary.intercept)},
                        {"rho", summary.rho},
                        {"tolerance", summary.tolerance},
                        {"decay_consistent", summary.decay_consistent},
                        {"partial_sum", summary.partial_sum},
                        {"tail_bound", real_or_null(summary.tail_bound)},
                        {"certificate", real_or_null(summary.certificate)}};
  return doc.dump(2) + "\n";
}

}  // namespace polyfreq
