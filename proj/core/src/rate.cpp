#include "polyfreq/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "polyfreq/ecdf.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/estimators.hpp"
#include "polyfreq/histogram.hpp"
#include "polyfreq/modulus.hpp"
#include "polyfreq/parallel.hpp"
#include "polyfreq/rng.hpp"
#include "polyfreq/simulate.hpp"
#include "polyfreq/sup_error.hpp"
#include "polyfreq/truth.hpp"

namespace polyfreq {

namespace {

struct TaskResult {
  SupErrorRecord record;
  ModulusRecord modulus;
  DecompositionRecord decomposition;
};

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
}

DecompositionRecord decompose(const SparseHistogram& h, const TruthDensity& truth, std::span<const double> grid,
                              double sup, double modulus) {
  const BinningScheme& scheme = h.scheme();
  const double b = scheme.bin_width();
  const auto an_truth = [&](std::int64_t z) {
    return (truth.cdf(scheme.edge(z + 1)) - truth.cdf(scheme.edge(z))) / b;
  };
  DecompositionRecord d;
  double shift_left = 0.0;
  double shift_right = 0.0;
  for (double x : grid) {
    const std::int64_t k = scheme.midpoint_index(x);
    const double f_left = truth.pdf(x - 0.5 * b);
    const double f_right = truth.pdf(x + 0.5 * b);
    const double fx = truth.pdf(x);
    d.bias_term = std::max({d.bias_term, std::fabs(an_truth(k - 1) - f_left), std::fabs(an_truth(k) - f_right)});
    shift_left = std::max(shift_left, std::fabs(f_left - fx));
    shift_right = std::max(shift_right, std::fabs(f_right - fx));
  }
  d.sup_error = sup;
  d.stochastic_term = modulus / (std::sqrt(static_cast<double>(h.sample_size())) * b);
  d.shift_term = shift_left + shift_right;
  d.bound = 2.0 * d.stochastic_term + 2.0 * d.bias_term + d.shift_term;
  d.holds = sup <= d.bound;
  return d;
}

TaskResult run_task(const TimeSeriesModel& model, const TruthDensity& truth, std::uint64_t n, std::size_t rep,
                    std::uint64_t task_seed, const RateOptions& options) {
  const auto sample = simulate(model, n, task_seed);
  const double b = options.bandwidth_scale * stone_bandwidth(n);
  const auto grid = make_eval_grid(truth, b);

  TaskResult out;
  const auto start = std::chrono::steady_clock::now();
  auto hist = build_histogram(sample, BinningScheme(b));
  SupError sup;
  switch (options.estimator) {
    case RateEstimator::frequency_polygon:
      sup = sup_error(DensityEstimate::frequency_polygon(hist), truth, grid);
      break;
    case RateEstimator::histogram:
      sup = sup_error(DensityEstimate::histogram(hist), truth, grid);
      break;
    case RateEstimator::truth:
      sup = sup_error(truth.pdf, truth.lipschitz, truth, grid);
      break;
  }
  out.record = {n, b, sup.value, sup.eval_points, rep, std::chrono::steady_clock::now() - start};

  if (options.compute_modulus || options.check_decomposition) {
    const EmpiricalCdf ecdf(sample);
    const double delta = modulus_exact(ecdf, truth.cdf, b);
    const auto envelope = modulus_envelope(n, b);
    out.modulus = {n, b, rep, delta, envelope.term1, envelope.term2};
    if (options.check_decomposition && options.estimator == RateEstimator::frequency_polygon) {
      out.decomposition = decompose(hist, truth, grid, sup.value, delta);
      out.decomposition.replication = rep;
      out.decomposition.n = n;
    }
  }
  return out;
}

double fit_slope(std::span<const std::uint64_t> ns, std::span<const double> medians) {
  std::vector<double> x(ns.begin(), ns.end());
  return loglog_slope(x, medians);
}

}  // namespace

std::vector<std::uint64_t> geometric_sample_sizes(std::uint64_t n_min, std::uint64_t n_max) {
  if (n_min == 0 || n_min >= n_max) throw DomainError("sample-size grid needs 0 < n_min < n_max");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = n_min; n <= n_max; n *= 2) {
    out.push_back(n);
    if (n > n_max / 2) break;
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more paired points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const auto m = static_cast<double>(x.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

RateReport rate_experiment(const TimeSeriesModel& model, std::span<const std::uint64_t> n_values,
                           std::size_t reps, std::uint64_t seed, const RateOptions& options) {
  if (reps == 0) throw DomainError("rate experiment needs at least one replication");
  const std::set<std::uint64_t> distinct(n_values.begin(), n_values.end());
  if (distinct.size() < 2) throw DomainError("rate experiment needs at least two distinct sample sizes");
  if (*distinct.begin() < 16) throw DomainError("rate experiment needs n >= 16");
  if (!(options.bandwidth_scale > 0.0)) throw DomainError("bandwidth scale must be positive");
  validate_model(model);
  const auto truth = truth_for(model);
  if (!truth) throw ModelError("model '" + family_name(model) + "' has no usable truth density");

  const std::vector<std::uint64_t> ns(distinct.begin(), distinct.end());
  std::vector<TaskResult> results(ns.size() * reps);
  parallel_for(results.size(), options.threads, [&](std::size_t t) {
    const std::size_t ni = t / reps;
    const std::size_t rep = t % reps;
    results[t] = run_task(model, *truth, ns[ni], rep, stream_seed(seed, ni, rep), options);
  });

  RateReport report;
  report.replications = reps;
  report.seed = seed;
  report.meets_design = ns.size() >= 5 && ns.back() / ns.front() >= 64 && reps >= 10;
  std::vector<std::vector<double>> errors(ns.size());
  for (std::size_t t = 0; t < results.size(); ++t) {
    const auto& r = results[t];
    report.records.push_back(r.record);
    errors[t / reps].push_back(r.record.sup_error);
    if (options.compute_modulus) report.modulus.push_back(r.modulus);
    if (options.check_decomposition && options.estimator == RateEstimator::frequency_polygon) {
      report.decomposition.push_back(r.decomposition);
    }
  }

  std::vector<double> medians;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    RatePoint p;
    p.n = ns[i];
    p.b = results[i * reps].record.b;
    p.median_sup_error = median_of(errors[i]);
    p.mean_sup_error = std::accumulate(errors[i].begin(), errors[i].end(), 0.0) / static_cast<double>(reps);
    if (options.compute_modulus) {
      std::vector<double> deltas;
      for (std::size_t r = 0; r < reps; ++r) deltas.push_back(results[i * reps + r].modulus.delta_n_b);
      p.median_modulus = median_of(deltas);
    }
    medians.push_back(p.median_sup_error);
    report.per_n.push_back(p);
  }

  report.degenerate = std::any_of(medians.begin(), medians.end(), [](double m) { return !(m > 0.0); });
  if (report.degenerate) {
    report.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.fitted_slope = fit_slope(ns, medians);

  if (reps >= 2 && options.bootstrap_resamples > 0) {
    Engine engine = make_engine(stream_seed(seed, 0x626f6f74ULL));
    std::uniform_int_distribution<std::size_t> pick(0, reps - 1);
    std::vector<double> slopes;
    slopes.reserve(options.bootstrap_resamples);
    std::vector<double> resampled(reps);
    std::vector<double> boot_medians(ns.size());
    for (std::size_t bi = 0; bi < options.bootstrap_resamples; ++bi) {
      for (std::size_t i = 0; i < ns.size(); ++i) {
        for (double& v : resampled) v = errors[i][pick(engine)];
        boot_medians[i] = median_of(resampled);
      }
      if (std::all_of(boot_medians.begin(), boot_medians.end(), [](double m) { return m > 0.0; })) {
        slopes.push_back(fit_slope(ns, boot_medians));
      }
    }
    if (!slopes.empty()) {
      std::sort(slopes.begin(), slopes.end());
      const auto at = [&](double q) {
        return slopes[std::min(slopes.size() - 1, static_cast<std::size_t>(q * static_cast<double>(slopes.size())))];
      };
      report.slope_ci = std::make_pair(at(0.025), at(0.975));
    }
  }
  return report;
}

}  // namespace polyfreq
