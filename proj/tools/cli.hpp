#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace polyfreq::cli {

// Exit status contract.
enum ExitCode : int { kSuccess = 0, kUsage = 1, kData = 2, kModel = 3 };

struct BenchOptions {
  std::uint64_t n = 1000000;
  std::uint64_t m = 1000;
  std::uint64_t seed = 1;
  unsigned repeats = 5;
  std::optional<double> bandwidth;  // default stone_bandwidth(n)
};

// Minimum over repeats of each timing, in milliseconds.
struct BenchResult {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double b = 0.0;
  std::size_t occupied_bins = 0;
  std::size_t histogram_bytes = 0;
  double fp_build_ms = 0.0;
  double fp_query_ms = 0.0;
  double fp_total_ms = 0.0;  // best build + query run, measured together
  double kde_ms = 0.0;
  double speedup = 0.0;      // kde_ms / fp_total_ms
  double checksum = 0.0;     // keeps the evaluations observable
};

// Standard normal sample of size n; m query points evenly spread over
// [-4, 4]. Both estimators run single threaded on the same sample.
BenchResult run_bench(const BenchOptions& options);

// Full command line entry point. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyfreq::cli
