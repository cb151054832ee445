#include "polyfreq/sup_error.hpp"

#include <cmath>

#include "polyfreq/error.hpp"

namespace polyfreq {

std::vector<double> make_eval_grid(const TruthDensity& truth, double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("evaluation grid needs a positive bandwidth");
  const double lo = truth.support_lo - 4.0 * bandwidth;
  const double hi = truth.support_hi + 4.0 * bandwidth;
  const double step = bandwidth / 10.0;
  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid[i] = lo + step * static_cast<double>(i);
  return grid;
}

SupError sup_error(const std::function<double(double)>& estimate, double estimate_max_slope,
                   const TruthDensity& truth, std::span<const double> grid) {
  if (grid.size() < 2) throw DomainError("evaluation grid needs at least two points");
  if (grid.front() > truth.support_lo || grid.back() < truth.support_hi) {
    throw DomainError("evaluation grid does not cover the truth's effective support");
  }
  SupError out;
  out.eval_points = grid.size();
  double widest = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      if (!(grid[i] > grid[i - 1])) throw DomainError("evaluation grid must be strictly increasing");
      widest = std::max(widest, grid[i] - grid[i - 1]);
    }
    out.value = std::max(out.value, std::fabs(estimate(grid[i]) - truth.pdf(grid[i])));
  }
  out.discretization_bound = (truth.lipschitz + estimate_max_slope) * widest / 2.0;
  return out;
}

SupError sup_error(const DensityEstimate& estimate, const TruthDensity& truth, std::span<const double> grid) {
  return sup_error([&estimate](double x) { return estimate(x); }, estimate.max_slope(), truth, grid);
}

}  // namespace polyfreq
