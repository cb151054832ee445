#include "polyfreq/modulus.hpp"

#include <algorithm>
#include <deque>
#include <vector>

#include "polyfreq/error.hpp"

namespace polyfreq {

namespace {

// Distinct observation values with their multiplicity ranges:
// lo = #{X < value}, hi = #{X <= value}.
struct Group {
  double value;
  double lo;  // as a fraction of n
  double hi;
  double cdf;  // F(value)
};

std::vector<Group> group_sample(std::span<const double> sorted, const std::function<double(double)>& F) {
  const double n = static_cast<double>(sorted.size());
  std::vector<Group> groups;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    groups.push_back({sorted[i], static_cast<double>(i) / n, static_cast<double>(j) / n, F(sorted[i])});
    i = j;
  }
  return groups;
}

// max over l <= j with value_j - value_l < b of H(value_l-) - H(value_j).
double upward_excursion(const std::vector<Group>& g, double b) {
  double best = 0.0;
  std::deque<std::size_t> window;  // indices with decreasing key F(x_l) - lo_l
  const auto key = [&](std::size_t l) { return g[l].cdf - g[l].lo; };
  for (std::size_t j = 0; j < g.size(); ++j) {
    while (!window.empty() && key(window.back()) <= key(j)) window.pop_back();
    window.push_back(j);
    while (!(g[window.front()].value > g[j].value - b)) window.pop_front();
    best = std::max(best, key(window.front()) - g[j].cdf + g[j].hi);
  }
  return best;
}

// max over i < m with value_m - value_i <= b of H(value_m-) - H(value_i).
double downward_between_observations(const std::vector<Group>& g, double b) {
  double best = 0.0;
  std::deque<std::size_t> window;  // indices with decreasing key hi_i - F(x_i)
  const auto key = [&](std::size_t i) { return g[i].hi - g[i].cdf; };
  for (std::size_t m = 1; m < g.size(); ++m) {
    while (!window.empty() && key(window.back()) <= key(m - 1)) window.pop_back();
    window.push_back(m - 1);
    while (!window.empty() && g[window.front()].value < g[m].value - b) window.pop_front();
    if (!window.empty()) best = std::max(best, g[m].cdf - g[m].lo + key(window.front()));
  }
  return best;
}

}  // namespace

double modulus_exact(const EmpiricalCdf& ecdf, const std::function<double(double)>& truth_cdf, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("modulus window width must be positive and finite");
  const auto sorted = ecdf.sorted();
  const double n = static_cast<double>(sorted.size());
  const auto groups = group_sample(sorted, truth_cdf);

  const auto H = [&](double x) { return truth_cdf(x) - ecdf(x); };

  double best = std::max(upward_excursion(groups, b), downward_between_observations(groups, b));

  for (const Group& g : groups) {
    // v at an observation, u = v + b.
    best = std::max(best, H(g.value + b) - (g.cdf - g.hi));
    // u just below an observation, v = u - b.
    best = std::max(best, (g.cdf - g.lo) - H(g.value - b));
  }

  // Free windows of width exactly b: local maxima of F(v + b) - F(v).
  const auto mass = [&](double v) { return truth_cdf(v + b) - truth_cdf(v); };
  const double margin = std::max(b, 0.25 * (sorted.back() - sorted.front()));
  const double lo = sorted.front() - b - margin;
  const double hi = sorted.back() + margin;
  constexpr std::size_t kScan = 8192;
  const double step = (hi - lo) / static_cast<double>(kScan);
  std::vector<double> scan(kScan + 1);
  for (std::size_t i = 0; i <= kScan; ++i) scan[i] = mass(lo + step * static_cast<double>(i));
  for (std::size_t i = 1; i < kScan; ++i) {
    if (!(scan[i] > scan[i - 1] && scan[i] >= scan[i + 1])) continue;
    double a = lo + step * static_cast<double>(i - 1);
    double c = lo + step * static_cast<double>(i + 1);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = c - kInvPhi * (c - a);
    double x2 = a + kInvPhi * (c - a);
    double f1 = mass(x1);
    double f2 = mass(x2);
    for (int it = 0; it < 80 && c - a > 1e-13 * (1.0 + std::fabs(a)); ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (c - a);
        f2 = mass(x2);
      } else {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - kInvPhi * (c - a);
        f1 = mass(x1);
      }
    }
    const double v = 0.5 * (a + c);
    best = std::max(best, H(v + b) - H(v));
  }
  return std::sqrt(n) * best;
}

ModulusEnvelope modulus_envelope(std::uint64_t n, double b) {
  if (n < 16) throw DomainError("modulus envelope needs n >= 16");
  if (!(b > 0.0)) throw DomainError("modulus envelope needs b > 0");
  const double log_n = std::log(static_cast<double>(n));
  return {std::sqrt(b * log_n), b * std::sqrt(log_n) * std::log(log_n)};
}

}  // namespace polyfreq
