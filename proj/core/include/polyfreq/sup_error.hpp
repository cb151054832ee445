#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polyfreq/estimators.hpp"
#include "polyfreq/truth.hpp"

namespace polyfreq {

// Evaluation grid with spacing b/10 over [support_lo - 4b, support_hi + 4b].
std::vector<double> make_eval_grid(const TruthDensity& truth, double bandwidth);

struct SupError {
  double value = 0.0;
  // (Lipschitz(f) + max slope of the estimate) * spacing / 2: how far the
  // true sup can sit above the grid maximum.
  double discretization_bound = 0.0;
  std::size_t eval_points = 0;
};

// max over grid of |estimate(x) - truth.pdf(x)|. Throws DomainError if the
// grid is unsorted or does not cover [support_lo, support_hi].
SupError sup_error(const std::function<double(double)>& estimate, double estimate_max_slope,
                   const TruthDensity& truth, std::span<const double> grid);
SupError sup_error(const DensityEstimate& estimate, const TruthDensity& truth, std::span<const double> grid);

}  // namespace polyfreq
