#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq {

// Density tabulated on a sorted grid, linearly interpolated between nodes
// and zero outside. cdf() integrates the interpolant exactly.
class GridDensity {
 public:
  GridDensity(std::vector<double> grid, std::vector<double> values);

  double pdf(double x) const;
  double cdf(double x) const;
  // Trapezoid integral over the whole grid.
  double mass() const { return cumulative_.back(); }
  // Largest |slope| of the interpolant.
  double max_slope() const;

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

// Upper bound on the stationary RMS of a contractive TAR model:
// |r(x)| <= rho |x| gives E X^2 <= sigma^2 / (1 - rho^2).
double tar_rms_bound(const TarModel& model);

// Uniform grid over +-(8 rms bound + sigma).
std::vector<double> tar_oracle_grid(const TarModel& model, std::size_t points = 1601);

// Stationary marginal density of a Gaussian-noise TAR model on `grid`:
// fixed-point iteration f <- int phi_sigma(x - r(y)) f(y) dy with the
// trapezoid rule, started from the noise density and stopped once the sup
// change falls below `tolerance`. Throws ConvergenceError after
// max_iterations, DomainError if the grid does not cover +-8 rms bounds.
std::vector<double> tar_marginal_oracle(const TarModel& model, std::span<const double> grid,
                                        std::size_t max_iterations = 10000, double tolerance = 1e-10);

}  // namespace polyfreq
