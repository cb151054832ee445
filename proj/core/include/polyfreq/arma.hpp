#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyfreq/models.hpp"

namespace polyfreq {

// Roots must have modulus below this to count as strictly inside the unit circle.
inline constexpr double kUnitRootMargin = 1e-9;

struct StationarityReport {
  bool stationary = false;
  // Moduli of the roots of A(z) = z^p - sum a_j z^{p-j}, descending.
  std::vector<double> ar_root_moduli;
  // Moduli of the roots of B(z) = sum_{j=0}^{q} b_j z^{q-j}, b_0 = 1, descending.
  std::vector<double> ma_root_moduli;
  bool ma_sum_nonzero = true;
  std::string diagnostic;
};

// Companion-matrix root check of both polynomials.
StationarityReport arma_check_stationary(const ArmaModel& model);

// beta_0..beta_K of X_n = mu + sum beta_j e_{n-j}, from
// beta_j = b_j + sum_{i=1}^{min(j,p)} a_i beta_{j-i}. Requires K >= p + q and
// a stationary model.
std::vector<double> arma_to_ma_coeffs(const ArmaModel& model, std::size_t K);

// Smallest K >= p + q whose discarded tail satisfies
// sum_{j>K} beta_j^2 < relative_tail * sum_j beta_j^2.
std::size_t ma_truncation_lag(const ArmaModel& model, double relative_tail = 1e-12);

struct GaussianMarginal {
  double mean = 0.0;
  double variance = 0.0;
};

// Exact marginal of a stationary Gaussian ARMA: mean a0 / (1 - sum a_j),
// variance sigma^2 sum beta_j^2. Throws ModelError for non-Gaussian noise.
GaussianMarginal arma_marginal(const ArmaModel& model);

}  // namespace polyfreq
