#include "polyfreq/arma.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polyfreq/error.hpp"

namespace polyfreq {

namespace {

// Moduli of the roots of z^d + c[0] z^{d-1} + ... + c[d-1], descending.
std::vector<double> monic_root_moduli(const std::vector<double>& c) {
  const auto d = static_cast<Eigen::Index>(c.size());
  if (d == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) companion(0, j) = -c[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> moduli;
  moduli.reserve(c.size());
  for (Eigen::Index i = 0; i < d; ++i) moduli.push_back(std::abs(solver.eigenvalues()[i]));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

double spectral_radius(const ArmaModel& model) {
  const auto report = arma_check_stationary(model);
  return report.ar_root_moduli.empty() ? 0.0 : report.ar_root_moduli.front();
}

std::vector<double> run_recursion(const ArmaModel& model, std::size_t K) {
  std::vector<double> beta(K + 1, 0.0);
  beta[0] = 1.0;
  for (std::size_t j = 1; j <= K; ++j) {
    double v = j <= model.ma.size() ? model.ma[j - 1] : 0.0;
    for (std::size_t i = 1; i <= std::min(j, model.ar.size()); ++i) v += model.ar[i - 1] * beta[j - i];
    beta[j] = v;
  }
  return beta;
}

void require_stationary(const ArmaModel& model) {
  const auto report = arma_check_stationary(model);
  if (!report.stationary) throw ModelError(report.diagnostic);
}

}  // namespace

StationarityReport arma_check_stationary(const ArmaModel& model) {
  StationarityReport report;
  std::vector<double> ar_coeffs;
  for (double a : model.ar) ar_coeffs.push_back(-a);
  report.ar_root_moduli = monic_root_moduli(ar_coeffs);
  report.ma_root_moduli = monic_root_moduli(model.ma);
  report.ma_sum_nonzero = 1.0 + std::accumulate(model.ma.begin(), model.ma.end(), 0.0) != 0.0;

  std::ostringstream diag;
  diag.precision(12);
  const auto check = [&](const std::vector<double>& moduli, const char* which) {
    bool ok = true;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (!(moduli[i] < 1.0 - kUnitRootMargin)) {
        ok = false;
        diag << which << " root " << i << " has modulus " << moduli[i]
             << " (must be < 1 - " << kUnitRootMargin << "); ";
      }
    }
    return ok;
  };
  const bool ar_ok = check(report.ar_root_moduli, "AR polynomial A(z)");
  const bool ma_ok = check(report.ma_root_moduli, "MA polynomial B(z)");
  if (!report.ma_sum_nonzero) diag << "MA coefficients sum to zero (1 + sum b_j = 0); ";
  report.stationary = ar_ok && ma_ok && report.ma_sum_nonzero;
  std::string text = diag.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  report.diagnostic = report.stationary ? "stationary" : text;
  return report;
}

std::vector<double> arma_to_ma_coeffs(const ArmaModel& model, std::size_t K) {
  require_stationary(model);
  if (K < model.ar.size() + model.ma.size()) throw DomainError("MA truncation K must be at least p + q");
  return run_recursion(model, K);
}

std::size_t ma_truncation_lag(const ArmaModel& model, double relative_tail) {
  require_stationary(model);
  if (!(relative_tail > 0.0 && relative_tail < 1.0)) throw DomainError("relative tail must lie in (0, 1)");
  const std::size_t p = model.ar.size();
  const std::size_t q = model.ma.size();
  if (p == 0) return q;

  // beta_j = O(j^{p-1} rho^j); run well past the point where rho^{2j} drops
  // below the tolerance, with slack for repeated roots.
  const double rho = std::max(spectral_radius(model), 1e-3);
  const double geometric = std::log(relative_tail * 1e-6) / (2.0 * std::log(rho));
  const auto horizon = static_cast<std::size_t>(p + q + 2.0 * std::ceil(geometric) + 50.0 * static_cast<double>(p));
  constexpr std::size_t kMaxHorizon = 50'000'000;
  if (horizon > kMaxHorizon) throw ModelError("AR root too close to the unit circle for MA truncation");

  const std::vector<double> beta = run_recursion(model, horizon);
  std::vector<double> tail(beta.size() + 1, 0.0);
  for (std::size_t j = beta.size(); j-- > 0;) tail[j] = tail[j + 1] + beta[j] * beta[j];
  const double total = tail[0];
  for (std::size_t K = p + q; K < beta.size(); ++K) {
    if (tail[K + 1] < relative_tail * total) return K;
  }
  return beta.size() - 1;
}

GaussianMarginal arma_marginal(const ArmaModel& model) {
  if (model.noise.kind() != NoiseSpec::Kind::gaussian) {
    throw ModelError("exact ARMA marginal requires Gaussian noise; use a density oracle instead");
  }
  require_stationary(model);
  const double ar_sum = std::accumulate(model.ar.begin(), model.ar.end(), 0.0);
  const auto beta = run_recursion(model, ma_truncation_lag(model, 1e-17));
  double squares = 0.0;
  for (double b : beta) squares += b * b;
  return {model.a0 / (1.0 - ar_sum), model.noise.variance() * squares};
}

}  // namespace polyfreq
