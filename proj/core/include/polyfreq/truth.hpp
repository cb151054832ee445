#pragma once

#include <functional>
#include <optional>

#include "polyfreq/models.hpp"
#include "polyfreq/tar_oracle.hpp"

namespace polyfreq {

// Ground-truth marginal used to score estimates.
struct TruthDensity {
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  // Quantiles of level 1e-9 and 1 - 1e-9.
  double support_lo = 0.0;
  double support_hi = 0.0;
  // Lipschitz constant of pdf.
  double lipschitz = 0.0;
};

inline constexpr double kSupportTail = 1e-9;

TruthDensity gaussian_truth(double mean, double variance);
TruthDensity grid_truth(GridDensity density);

// Exact marginal for Gaussian ARMA and linear processes (closed form) and
// Gaussian TAR (fixed-point oracle); nullopt for models without a usable truth.
std::optional<TruthDensity> truth_for(const TimeSeriesModel& model);

}  // namespace polyfreq
