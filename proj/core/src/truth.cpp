#include "polyfreq/truth.hpp"

#include <cmath>
#include <memory>

#include "polyfreq/arma.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/normal.hpp"

namespace polyfreq {

namespace {

template <class Cdf>
double quantile_by_bisection(const Cdf& cdf, double level, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TruthDensity gaussian_truth(double mean, double variance) {
  if (!(variance > 0.0)) throw DomainError("Gaussian truth needs positive variance");
  const double sd = std::sqrt(variance);
  TruthDensity truth;
  truth.pdf = [mean, sd](double x) { return normal_pdf(x, mean, sd); };
  truth.cdf = [mean, sd](double x) { return normal_cdf(x, mean, sd); };
  const auto standard = [](double z) { return normal_cdf(z); };
  const double z = -quantile_by_bisection(standard, kSupportTail, -40.0, 0.0);
  truth.support_lo = mean - z * sd;
  truth.support_hi = mean + z * sd;
  // max |phi'| of N(mean, sd^2) is phi(1) / sd^2.
  truth.lipschitz = normal_pdf(1.0) / variance;
  return truth;
}

TruthDensity grid_truth(GridDensity density) {
  auto shared = std::make_shared<const GridDensity>(std::move(density));
  TruthDensity truth;
  truth.pdf = [shared](double x) { return shared->pdf(x); };
  truth.cdf = [shared](double x) { return shared->cdf(x); };
  const auto& grid = shared->grid();
  const double mass = shared->mass();
  const auto cdf = [&](double x) { return shared->cdf(x); };
  truth.support_lo = quantile_by_bisection(cdf, kSupportTail * mass, grid.front(), grid.back());
  truth.support_hi = quantile_by_bisection(cdf, (1.0 - kSupportTail) * mass, grid.front(), grid.back());
  truth.lipschitz = shared->max_slope();
  return truth;
}

std::optional<TruthDensity> truth_for(const TimeSeriesModel& model) {
  if (const auto* arma = std::get_if<ArmaModel>(&model)) {
    if (arma->noise.kind() != NoiseSpec::Kind::gaussian) return std::nullopt;
    const auto marginal = arma_marginal(*arma);
    return gaussian_truth(marginal.mean, marginal.variance);
  }
  if (const auto* lin = std::get_if<LinearProcess>(&model)) {
    if (lin->noise.kind() != NoiseSpec::Kind::gaussian) return std::nullopt;
    double squares = 0.0;
    for (double a : lin->coeffs) squares += a * a;
    if (!(squares > 0.0)) return std::nullopt;
    return gaussian_truth(lin->mean, lin->noise.variance() * squares);
  }
  if (const auto* tar = std::get_if<TarModel>(&model)) {
    if (tar->noise.kind() != NoiseSpec::Kind::gaussian) return std::nullopt;
    auto grid = tar_oracle_grid(*tar);
    auto values = tar_marginal_oracle(*tar, grid);
    return grid_truth(GridDensity(std::move(grid), std::move(values)));
  }
  return std::nullopt;
}

}  // namespace polyfreq
