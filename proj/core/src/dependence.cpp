#include "polyfreq/dependence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "detail/simulate_detail.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/format.hpp"
#include "polyfreq/parallel.hpp"
#include "polyfreq/rng.hpp"
#include "polyfreq/simulate.hpp"

namespace polyfreq {

namespace {

std::size_t history_length(const TimeSeriesModel& model, std::size_t burn_in) {
  if (const auto* lin = std::get_if<LinearProcess>(&model)) return lin->coeffs.size() - 1;
  return burn_in;
}

// Both paths are simulated from full innovation buffers that agree everywhere
// except at time 0, which sits right after the pre-sample history.
CoupledPair coupled_unchecked(const TimeSeriesModel& model, std::size_t k, std::uint64_t seed,
                              std::size_t burn_in, bool swap) {
  const std::size_t history = history_length(model, burn_in);
  NoiseSampler sampler(noise_of(model), seed);
  std::vector<double> buffer = sampler.draw(history);
  double e0 = sampler.next();
  double e0_prime = sampler.next();
  if (swap) std::swap(e0, e0_prime);
  buffer.push_back(e0);
  for (std::size_t t = 1; t <= k; ++t) buffer.push_back(sampler.next());

  CoupledPair pair;
  pair.innovation = e0;
  pair.innovation_prime = e0_prime;
  pair.shared_innovations.assign(buffer.end() - static_cast<std::ptrdiff_t>(k), buffer.end());
  if (history == 0 && !std::holds_alternative<LinearProcess>(model)) {
    // No history: X_{-1} = 0, so X_0 = r(0) + e_0.
    buffer.insert(buffer.begin(), 0.0);
    pair.original = detail::run_validated(model, buffer, k + 1, 1);
    buffer[1] = e0_prime;
    pair.coupled = detail::run_validated(model, buffer, k + 1, 1);
    return pair;
  }
  if (std::holds_alternative<TarModel>(model) || std::holds_alternative<NlarModel>(model)) {
    pair.start = detail::run_validated(model, buffer, 1, burn_in - 1).front();
  }
  pair.original = detail::run_validated(model, buffer, k + 1, burn_in);
  buffer[history] = e0_prime;
  pair.coupled = detail::run_validated(model, buffer, k + 1, burn_in);
  return pair;
}

std::size_t resolve_burn_in(const TimeSeriesModel& model, const CouplingOptions& options) {
  return options.burn_in.value_or(default_burn_in(model));
}

DeltaEstimate summarize(std::size_t k, std::span<const double> diffs) {
  const auto R = static_cast<double>(diffs.size());
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= R;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double d : diffs) {
    const double c = (d - mean) * (d - mean);
    m2 += c;
    m4 += c * c;
  }
  const double s2 = m2 / (R - 1.0);
  m4 /= R;
  DeltaEstimate est;
  est.k = k;
  est.replications = diffs.size();
  est.delta_hat = std::sqrt(s2);
  // Var(s^2) ~ (m4 - (R-3)/(R-1) s^4) / R, then se(s) = se(s^2) / (2 s).
  const double var_s2 = std::max(0.0, (m4 - (R - 3.0) / (R - 1.0) * s2 * s2) / R);
  est.std_error = est.delta_hat > 0.0 ? std::sqrt(var_s2) / (2.0 * est.delta_hat) : 0.0;
  return est;
}

}  // namespace

CoupledPair simulate_coupled(const TimeSeriesModel& model, std::size_t k, std::uint64_t seed,
                             const CouplingOptions& options) {
  validate_model(model);
  return coupled_unchecked(model, k, seed, resolve_burn_in(model, options), options.swap_time_zero);
}

std::vector<DeltaEstimate> estimate_delta_profile(const TimeSeriesModel& model, std::size_t k_max,
                                                  std::size_t replications, std::uint64_t seed, unsigned threads) {
  if (replications < kMinDeltaReplications) {
    throw DomainError("delta estimation needs at least " + std::to_string(kMinDeltaReplications) +
                      " replications, got " + std::to_string(replications));
  }
  validate_model(model);
  const std::size_t burn_in = default_burn_in(model);
  const std::size_t lags = k_max + 1;
  // diffs[k * R + r] = X_k - X*_k of replication r.
  std::vector<double> diffs(lags * replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    const auto pair = coupled_unchecked(model, k_max, stream_seed(seed, r), burn_in, false);
    for (std::size_t k = 0; k < lags; ++k) diffs[k * replications + r] = pair.original[k] - pair.coupled[k];
  });
  std::vector<DeltaEstimate> out;
  out.reserve(lags);
  for (std::size_t k = 0; k < lags; ++k) {
    out.push_back(summarize(k, std::span<const double>(diffs).subspan(k * replications, replications)));
  }
  return out;
}

DeltaEstimate estimate_delta(const TimeSeriesModel& model, std::size_t k, std::size_t replications,
                             std::uint64_t seed, unsigned threads) {
  return estimate_delta_profile(model, k, replications, seed, threads).back();
}

ContractionCheck check_pathwise_contraction(const CoupledPair& pair, double rho) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  ContractionCheck check;
  const std::size_t len = std::min(pair.original.size(), pair.coupled.size());
  for (std::size_t k = 1; k < len; ++k) {
    const double prev = std::fabs(pair.original[k - 1] - pair.coupled[k - 1]);
    const double cur = std::fabs(pair.original[k] - pair.coupled[k]);
    const double allowance =
        eps * (rho * (std::fabs(pair.original[k - 1]) + std::fabs(pair.coupled[k - 1])) +
               std::fabs(pair.original[k]) + std::fabs(pair.coupled[k]));
    if (prev > 0.0) check.worst_ratio = std::max(check.worst_ratio, cur / prev);
    if (cur > rho * prev + allowance && check.holds) {
      check.holds = false;
      check.first_violation = k;
    }
  }
  return check;
}

SummabilityReport check_summability(std::span<const DeltaEstimate> deltas, double rho, double tolerance) {
  SummabilityReport report;
  report.rho = rho;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i].k != i) throw DomainError("delta estimates must cover consecutive lags from 0");
    report.partial_sum += deltas[i].delta_hat;
    if (deltas[i].delta_hat > 5.0 * deltas[i].std_error && deltas[i].delta_hat > 0.0) {
      report.lags_used.push_back(i);
    }
  }
  if (!deltas.empty()) {
    const DeltaEstimate& last = deltas.back();
    report.tail_bound = rho < 1.0 ? (last.delta_hat + 2.0 * last.std_error) * rho / (1.0 - rho)
                                  : std::numeric_limits<double>::infinity();
  }
  report.certificate = report.partial_sum + report.tail_bound;

  if (report.lags_used.size() < 2) return report;
  report.conclusive = true;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k : report.lags_used) {
    const double x = static_cast<double>(k);
    const double y = std::log(deltas[k].delta_hat);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto m = static_cast<double>(report.lags_used.size());
  report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  report.intercept = (sy - report.slope * sx) / m;
  report.decay_consistent = rho > 0.0 && report.slope <= std::log(rho) + tolerance;
  return report;
}

std::string delta_csv(std::span<const DeltaEstimate> deltas) {
  std::ostringstream os;
  os << "k,delta_hat,std_error,replications\n";
  for (const auto& d : deltas) {
    os << d.k << ',' << format_real(d.delta_hat) << ',' << format_real(d.std_error) << ',' << d.replications
       << '\n';
  }
  return os.str();
}

}  // namespace polyfreq
