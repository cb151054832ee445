#include "polyfreq/tar_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "polyfreq/error.hpp"
#include "polyfreq/normal.hpp"

namespace polyfreq {

namespace {

std::vector<double> trapezoid_weights(std::span<const double> grid) {
  std::vector<double> w(grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double half = 0.5 * (grid[i + 1] - grid[i]);
    w[i] += half;
    w[i + 1] += half;
  }
  return w;
}

void require_sorted(std::span<const double> grid) {
  if (grid.size() < 3) throw DomainError("density grid needs at least 3 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) throw DomainError("density grid must be strictly increasing");
  }
}

}  // namespace

GridDensity::GridDensity(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require_sorted(grid_);
  if (values_.size() != grid_.size()) throw DomainError("grid and density values differ in length");
  cumulative_.assign(grid_.size(), 0.0);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + 0.5 * (values_[i] + values_[i - 1]) * (grid_[i] - grid_[i - 1]);
  }
}

double GridDensity::pdf(double x) const {
  if (!(x >= grid_.front() && x <= grid_.back())) return 0.0;
  const auto hi = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), x) - grid_.begin());
  if (hi == grid_.size()) return values_.back();
  const std::size_t lo = hi - 1;
  const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

double GridDensity::cdf(double x) const {
  if (x <= grid_.front()) return 0.0;
  if (x >= grid_.back()) return cumulative_.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), x) - grid_.begin());
  const std::size_t lo = hi - 1;
  const double dx = x - grid_[lo];
  return cumulative_[lo] + 0.5 * (values_[lo] + pdf(x)) * dx;
}

double GridDensity::max_slope() const {
  double steepest = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    steepest = std::max(steepest, std::fabs(values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]));
  }
  return steepest;
}

double tar_rms_bound(const TarModel& model) {
  const double rho = model.contraction();
  return model.noise.stddev() / std::sqrt(1.0 - rho * rho);
}

std::vector<double> tar_oracle_grid(const TarModel& model, std::size_t points) {
  if (!(model.contraction() < 1.0)) throw ModelError("TAR model is not contractive");
  if (points < 3) throw DomainError("density grid needs at least 3 points");
  const double half = 8.0 * tar_rms_bound(model) + model.noise.stddev();
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

std::vector<double> tar_marginal_oracle(const TarModel& model, std::span<const double> grid,
                                        std::size_t max_iterations, double tolerance) {
  if (!(model.contraction() < 1.0)) throw ModelError("TAR model is not contractive");
  if (model.noise.kind() != NoiseSpec::Kind::gaussian) {
    throw ModelError("TAR density oracle requires Gaussian noise");
  }
  require_sorted(grid);
  const double reach = 8.0 * tar_rms_bound(model);
  if (grid.front() > -reach || grid.back() < reach) {
    throw DomainError("density grid must cover +-" + std::to_string(reach) + " (8 RMS bounds)");
  }

  const auto G = static_cast<Eigen::Index>(grid.size());
  const double sigma = model.noise.parameter();
  const auto weights = trapezoid_weights(grid);
  Eigen::MatrixXd kernel(G, G);
  for (Eigen::Index j = 0; j < G; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double centre = model.map(grid[js]);
    for (Eigen::Index i = 0; i < G; ++i) {
      kernel(i, j) = normal_pdf(grid[static_cast<std::size_t>(i)] - centre, 0.0, sigma) * weights[js];
    }
  }

  Eigen::VectorXd f(G);
  for (Eigen::Index i = 0; i < G; ++i) f(i) = normal_pdf(grid[static_cast<std::size_t>(i)], 0.0, sigma);

  double change = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd next = kernel * f;
    change = (next - f).cwiseAbs().maxCoeff();
    f = std::move(next);
    if (change < tolerance) return {f.data(), f.data() + f.size()};
  }
  throw ConvergenceError("TAR density iteration did not converge; last sup-change " + std::to_string(change),
                         change);
}

}  // namespace polyfreq
