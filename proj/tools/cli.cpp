#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyfreq/dependence.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/estimators.hpp"
#include "polyfreq/format.hpp"
#include "polyfreq/histogram.hpp"
#include "polyfreq/model_spec.hpp"
#include "polyfreq/models.hpp"
#include "polyfreq/rate.hpp"
#include "polyfreq/serialize.hpp"
#include "polyfreq/simulate.hpp"

namespace polyfreq::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kFallbackSeed = 1;
constexpr std::size_t kMaxGridPoints = 50'000'000;
constexpr std::size_t kReportedLines = 20;

// Bad command-line values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output;
  std::string format = "csv";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

struct EstimateArgs {
  std::string input;
  std::optional<double> bandwidth;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<double> grid_step;
};

struct SimulateArgs {
  std::string model;
  std::uint64_t n = 0;
  std::optional<std::size_t> burn_in;
};

struct DeltaArgs {
  std::string model;
  std::size_t k_max = 10;
  std::size_t reps = 10000;
};

struct RateArgs {
  std::string model;
  std::uint64_t n_min = 1024;
  std::uint64_t n_max = 131072;
  std::size_t reps = 20;
  double bandwidth_scale = 1.0;
  std::string estimator = "fp";
  std::size_t bootstrap = 1000;
};

struct BenchArgs {
  std::uint64_t n = 1000000;
  std::uint64_t m = 1000;
  unsigned repeats = 5;
  std::optional<double> bandwidth;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t resolve_seed(const Common& common) {
  if (common.seed) return *common.seed;
  const char* env = std::getenv("POLYFREQ_SEED");
  if (env == nullptr || *env == '\0') return kFallbackSeed;
  std::uint64_t seed = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, seed);
  if (ec != std::errc() || ptr != end) throw UsageError(std::string("POLYFREQ_SEED is not an unsigned integer: ") + env);
  return seed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --model takes a path, or the JSON document itself when it starts with '{'.
std::string model_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_file(arg);
}

void emit(const Common& common, const std::string& text, std::ostream& out) {
  if (common.output.empty() || common.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + common.output + "'");
  file << text;
}

// Comment header carried by every CSV artifact.
std::string csv_header(const std::string& command, const ordered_json& config) {
  return "# polyfreq " + command + "\n# config: " + config.dump() + "\n";
}

std::string with_config(const ordered_json& config, const std::string& body_json, const char* key) {
  ordered_json doc;
  doc["config"] = config;
  doc[key] = ordered_json::parse(body_json);
  return doc.dump(2) + "\n";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Reads a one-column numeric file. Blank lines and '#' comments are
// skipped; a non-numeric first data line is taken as a header. Every value
// goes to sink; bad lines are collected and reported together.
template <typename Sink>
void scan_values(std::istream& in, Sink&& sink) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_data_line = false;
  std::vector<std::size_t> bad;
  std::size_t bad_total = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    double x = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, x);
    const bool parsed = ec == std::errc() && ptr == end;
    if (!parsed && !seen_data_line) {
      seen_data_line = true;  // header
      continue;
    }
    seen_data_line = true;
    if (!parsed || !std::isfinite(x)) {
      if (bad.size() < kReportedLines) bad.push_back(line_no);
      ++bad_total;
      continue;
    }
    sink(x);
  }
  if (bad_total > 0) {
    std::ostringstream msg;
    msg << bad_total << " unparseable or non-finite row(s) at line(s) ";
    for (std::size_t i = 0; i < bad.size(); ++i) msg << (i ? ", " : "") << bad[i];
    if (bad_total > bad.size()) msg << ", ...";
    throw DataError(msg.str(), bad);
  }
}

// Streams the input (twice when b has to come from n), so memory stays
// proportional to the occupied bins rather than to the sample.
int cmd_estimate(const Common& common, const EstimateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.input.empty()) throw UsageError("estimate needs --input");
  const bool from_stdin = args.input == "-";
  std::string stdin_copy;
  if (from_stdin) {
    std::ostringstream os;
    os << std::cin.rdbuf();
    stdin_copy = os.str();
  }
  const auto open = [&]() -> std::unique_ptr<std::istream> {
    if (from_stdin) return std::make_unique<std::istringstream>(stdin_copy);
    auto file = std::make_unique<std::ifstream>(args.input, std::ios::binary);
    if (!*file) throw UsageError("cannot open '" + args.input + "'");
    return file;
  };
  if (args.bandwidth && !(*args.bandwidth > 0.0 && std::isfinite(*args.bandwidth))) {
    throw UsageError("--bandwidth must be positive");
  }

  std::uint64_t n = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const auto track = [&](double x) {
    ++n;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  };
  std::optional<HistogramBuilder> builder;
  if (args.bandwidth) {
    builder.emplace(BinningScheme(*args.bandwidth));
    scan_values(*open(), [&](double x) {
      track(x);
      builder->add(x);
    });
  } else {
    scan_values(*open(), track);
    if (n >= 2) {
      builder.emplace(BinningScheme(stone_bandwidth(n)));
      scan_values(*open(), [&](double x) { builder->add(x); });
    }
  }
  if (n < 2) throw DataError("estimate needs at least 2 observations, got " + std::to_string(n));

  const SparseHistogram hist = builder->finish();
  const double b = hist.bin_width();
  const double g_min = args.grid_min.value_or(lo - b);
  const double g_max = args.grid_max.value_or(hi + b);
  const double g_step = args.grid_step.value_or(b / 10.0);
  if (!(g_step > 0.0) || !std::isfinite(g_min) || !std::isfinite(g_max) || g_max < g_min) {
    throw UsageError("grid needs finite --grid-min <= --grid-max and a positive --grid-step");
  }
  const double span = (g_max - g_min) / g_step;
  if (span >= static_cast<double>(kMaxGridPoints)) throw UsageError("grid has too many points");
  const auto points = static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12))) + 1;

  ordered_json config = {{"command", "estimate"},
                         {"input", args.input},
                         {"bandwidth", b},
                         {"bandwidth_source", args.bandwidth ? "user" : "stone"},
                         {"grid_min", g_min},
                         {"grid_max", g_max},
                         {"grid_step", g_step},
                         {"format", common.format}};
  ordered_json summary = {{"n", n}, {"b", b}, {"p_n", hist.occupied_bins()}};
  err << "n=" << n << " b=" << format_real(b) << " p_n=" << hist.occupied_bins() << "\n";

  if (common.format == "json") {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < points; ++i) {
      const double x = g_min + g_step * static_cast<double>(i);
      rows.push_back({x, histogram_eval(hist, x), fp_eval(hist, x)});
    }
    ordered_json doc = {{"config", config},
                        {"summary", summary},
                        {"columns", {"x", "histogram", "frequency_polygon"}},
                        {"rows", rows}};
    emit(common, doc.dump(2) + "\n", out);
  } else {
    std::string text = csv_header("estimate", config);
    text += "x,histogram,frequency_polygon\n";
    for (std::size_t i = 0; i < points; ++i) {
      const double x = g_min + g_step * static_cast<double>(i);
      text += format_real(x) + ',' + format_real(histogram_eval(hist, x)) + ',' + format_real(fp_eval(hist, x)) +
              '\n';
    }
    emit(common, text, out);
  }
  return kSuccess;
}

int cmd_simulate(const Common& common, const SimulateArgs& args, std::ostream& out) {
  if (args.n == 0) throw UsageError("--n must be at least 1");
  const auto model = parse_model_spec(model_text(args.model));
  validate_model(model);
  const std::uint64_t seed = resolve_seed(common);
  const std::size_t burn_in = args.burn_in.value_or(default_burn_in(model));
  const auto sample = simulate(model, args.n, burn_in, seed);

  ordered_json config = {{"command", "simulate"},
                         {"model", ordered_json::parse(model_spec_to_json(model))},
                         {"n", args.n},
                         {"burn_in", burn_in},
                         {"seed", seed}};
  if (common.format == "json") {
    emit(common, ordered_json({{"config", config}, {"sample", sample}}).dump(2) + "\n", out);
    return kSuccess;
  }
  std::string text = csv_header("simulate", config);
  text += "x\n";
  for (double x : sample) text += format_real(x) + '\n';
  emit(common, text, out);
  return kSuccess;
}

int cmd_delta(const Common& common, const DeltaArgs& args, std::ostream& out, std::ostream& err) {
  const auto model = parse_model_spec(model_text(args.model));
  validate_model(model);
  const std::uint64_t seed = resolve_seed(common);
  const auto deltas = estimate_delta_profile(model, args.k_max, args.reps, seed, common.threads);
  const double rho = contraction_proxy(model);
  const auto summary = check_summability(deltas, rho);

  err << "rho=" << format_real(rho) << " lags_used=" << summary.lags_used.size();
  if (summary.conclusive) {
    err << " slope=" << format_real(summary.slope) << " ln(rho)=" << format_real(std::log(rho))
        << " decay_consistent=" << (summary.decay_consistent ? "yes" : "no");
  } else {
    err << " (inconclusive: fewer than two lags above the noise floor)";
  }
  err << " certificate=" << format_real(summary.certificate) << "\n";

  ordered_json config = {{"command", "delta"},
                         {"model", ordered_json::parse(model_spec_to_json(model))},
                         {"k_max", args.k_max},
                         {"replications", args.reps},
                         {"seed", seed}};
  if (common.format == "json") {
    emit(common, with_config(config, delta_report_to_json(deltas, summary), "report"), out);
  } else {
    emit(common, csv_header("delta", config) + delta_csv(deltas), out);
  }
  return kSuccess;
}

int cmd_rate(const Common& common, const RateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.n_min >= args.n_max) throw UsageError("--n-min must be smaller than --n-max");
  if (args.reps == 0) throw UsageError("--reps must be at least 1");
  const auto model = parse_model_spec(model_text(args.model));
  validate_model(model);
  const std::uint64_t seed = resolve_seed(common);

  RateOptions options;
  if (args.estimator == "fp") {
    options.estimator = RateEstimator::frequency_polygon;
  } else if (args.estimator == "histogram") {
    options.estimator = RateEstimator::histogram;
  } else {
    throw UsageError("--estimator must be fp or histogram");
  }
  options.bandwidth_scale = args.bandwidth_scale;
  options.bootstrap_resamples = args.bootstrap;
  options.threads = common.threads;
  if (args.reps == 1) err << "warning: a single replication gives no confidence interval for the slope\n";

  const auto ns = geometric_sample_sizes(args.n_min, args.n_max);
  const auto report = rate_experiment(model, ns, args.reps, seed, options);
  if (!report.meets_design) {
    err << "warning: design below 5 sample sizes spanning a ratio of 64 with 10 replications\n";
  }
  err << "fitted_slope=" << format_real(report.fitted_slope) << " target=" << format_real(report.target_slope);
  if (report.slope_ci) err << " ci=[" << format_real(report.slope_ci->first) << ", " << format_real(report.slope_ci->second) << "]";
  err << "\n";

  ordered_json config = {{"command", "rate"},
                         {"model", ordered_json::parse(model_spec_to_json(model))},
                         {"n_values", ns},
                         {"replications", args.reps},
                         {"estimator", args.estimator},
                         {"bandwidth_scale", args.bandwidth_scale},
                         {"bootstrap_resamples", args.bootstrap},
                         {"seed", seed}};
  if (common.format == "json") {
    emit(common, with_config(config, rate_report_to_json(report), "report"), out);
  } else {
    emit(common, csv_header("rate", config) + rate_records_csv(report), out);
  }
  return kSuccess;
}

int cmd_bench(const Common& common, const BenchArgs& args, std::ostream& out) {
  if (args.n < 10000) throw UsageError("bench needs --n >= 10000");
  if (args.m < 100) throw UsageError("bench needs --m >= 100");
  if (args.repeats == 0) throw UsageError("--repeats must be at least 1");
  BenchOptions options;
  options.n = args.n;
  options.m = args.m;
  options.seed = resolve_seed(common);
  options.repeats = args.repeats;
  options.bandwidth = args.bandwidth;
  const BenchResult r = run_bench(options);

  ordered_json config = {{"command", "bench"}, {"n", r.n}, {"m", r.m}, {"repeats", args.repeats}, {"seed", options.seed}};
  ordered_json rows = ordered_json::array({
      {"b", r.b},
      {"p_n", r.occupied_bins},
      {"histogram_bytes", r.histogram_bytes},
      {"fp_build_ms", r.fp_build_ms},
      {"fp_query_ms", r.fp_query_ms},
      {"fp_total_ms", r.fp_total_ms},
      {"kde_ms", r.kde_ms},
      {"speedup", r.speedup},
  });
  if (common.format == "json") {
    ordered_json result;
    for (const auto& row : rows) result[row[0].get<std::string>()] = row[1];
    emit(common, ordered_json({{"config", config}, {"result", result}}).dump(2) + "\n", out);
    return kSuccess;
  }
  std::string text = csv_header("bench", config) + "quantity,value\n";
  for (const auto& row : rows) {
    const auto& v = row[1];
    text += row[0].get<std::string>() + ',' +
            (v.is_number_float() ? format_real(v.get<double>()) : std::to_string(v.get<std::uint64_t>())) + '\n';
  }
  emit(common, text, out);
  return kSuccess;
}

void add_common(CLI::App* cmd, Common& common, bool seeded) {
  cmd->add_option("--output", common.output, "Output file (default stdout)");
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", common.threads, "Worker cap (0 = machine parallelism)");
  if (seeded) cmd->add_option("--seed", common.seed, "Seed (default $POLYFREQ_SEED, else 1)");
}

}  // namespace

BenchResult run_bench(const BenchOptions& options) {
  NoiseSampler sampler(NoiseSpec::gaussian(1.0), options.seed);
  const auto sample = sampler.draw(options.n);
  std::vector<double> queries(options.m);
  for (std::size_t i = 0; i < options.m; ++i) {
    queries[i] = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(options.m - 1);
  }

  BenchResult r;
  r.n = options.n;
  r.m = options.m;
  r.b = options.bandwidth.value_or(stone_bandwidth(options.n));
  r.fp_build_ms = r.fp_query_ms = r.fp_total_ms = r.kde_ms = std::numeric_limits<double>::infinity();
  const BinningScheme scheme(r.b);
  for (unsigned rep = 0; rep < options.repeats; ++rep) {
    const auto start = Clock::now();
    const auto hist = build_histogram(sample, scheme, 1);
    const double build = ms_since(start);
    const auto query_start = Clock::now();
    double sum = 0.0;
    for (double x : queries) sum += fp_eval(hist, x);
    const double query = ms_since(query_start);
    r.fp_build_ms = std::min(r.fp_build_ms, build);
    r.fp_query_ms = std::min(r.fp_query_ms, query);
    r.fp_total_ms = std::min(r.fp_total_ms, build + query);
    r.occupied_bins = hist.occupied_bins();
    r.histogram_bytes = hist.memory_bytes();
    r.checksum += sum;
  }
  for (unsigned rep = 0; rep < options.repeats; ++rep) {
    const auto start = Clock::now();
    double sum = 0.0;
    for (double x : queries) sum += kde_eval_naive(sample, r.b, x);
    r.kde_ms = std::min(r.kde_ms, ms_since(start));
    r.checksum += sum;
  }
  r.speedup = r.kde_ms / r.fp_total_ms;
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency polygon density estimation for stationary time series"};
  app.require_subcommand(1);

  Common common;
  EstimateArgs estimate;
  SimulateArgs simulate_args;
  DeltaArgs delta;
  RateArgs rate;
  BenchArgs bench;

  auto* est = app.add_subcommand("estimate", "Histogram and frequency polygon on a grid");
  add_common(est, common, false);
  est->add_option("--input", estimate.input, "One-column CSV ('-' for stdin)")->required();
  est->add_option("--bandwidth", estimate.bandwidth, "Bin width (default Stone bandwidth)");
  est->add_option("--grid-min", estimate.grid_min, "Grid start (default sample min - b)");
  est->add_option("--grid-max", estimate.grid_max, "Grid end (default sample max + b)");
  est->add_option("--grid-step", estimate.grid_step, "Grid spacing (default b/10)");

  auto* sim = app.add_subcommand("simulate", "Simulate a model from a JSON spec");
  add_common(sim, common, true);
  sim->add_option("--model", simulate_args.model, "Model spec file or inline JSON")->required();
  sim->add_option("--n", simulate_args.n, "Sample size")->required();
  sim->add_option("--burn-in", simulate_args.burn_in, "Discarded warm-up steps");

  auto* del = app.add_subcommand("delta", "Monte Carlo physical dependence measures");
  add_common(del, common, true);
  del->add_option("--model", delta.model, "Model spec file or inline JSON")->required();
  del->add_option("--kmax", delta.k_max, "Largest lag");
  del->add_option("--reps", delta.reps, "Coupled replications");

  auto* rat = app.add_subcommand("rate", "Sup-error rate experiment");
  add_common(rat, common, true);
  rat->add_option("--model", rate.model, "Model spec file or inline JSON")->required();
  rat->add_option("--n-min", rate.n_min, "Smallest sample size");
  rat->add_option("--n-max", rate.n_max, "Largest sample size (sizes double from n-min)");
  rat->add_option("--reps", rate.reps, "Replications per sample size");
  rat->add_option("--bandwidth-scale", rate.bandwidth_scale, "Multiplier on the Stone bandwidth");
  rat->add_option("--estimator", rate.estimator, "Estimator to score")->check(CLI::IsMember({"fp", "histogram"}));
  rat->add_option("--bootstrap", rate.bootstrap, "Bootstrap resamples for the slope interval");

  auto* ben = app.add_subcommand("bench", "Frequency polygon against naive KDE");
  add_common(ben, common, true);
  ben->add_option("--n", bench.n, "Sample size");
  ben->add_option("--m", bench.m, "Query points");
  ben->add_option("--repeats", bench.repeats, "Timing repeats (minimum is reported)");
  ben->add_option("--bandwidth", bench.bandwidth, "Bin width and KDE bandwidth (default Stone)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (est->parsed()) return cmd_estimate(common, estimate, out, err);
    if (sim->parsed()) return cmd_simulate(common, simulate_args, out);
    if (del->parsed()) return cmd_delta(common, delta, out, err);
    if (rat->parsed()) return cmd_rate(common, rate, out, err);
    if (ben->parsed()) return cmd_bench(common, bench, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kModel;
  } catch (const ConvergenceError& e) {
    err << "model error: " << e.what() << "\n";
    return kModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace polyfreq::cli
