#include "polyfreq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/simulate_detail.hpp"
#include "polyfreq/arma.hpp"
#include "polyfreq/error.hpp"

namespace polyfreq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void validate_linear(const LinearProcess& m) {
  if (m.coeffs.empty()) throw ModelError("linear process needs at least one coefficient");
  for (double a : m.coeffs) {
    if (!std::isfinite(a)) throw ModelError("linear process coefficients must be finite");
  }
}

void validate_tar(const TarModel& m) {
  if (!(m.contraction() < 1.0)) {
    throw ModelError("TAR model is not contractive: max(|a|, |b|) = " + std::to_string(m.contraction()) +
                     " must be < 1");
  }
}

void validate_nlar(const NlarModel& m) {
  if (!m.r) throw ModelError("NLAR model has no map r");
  if (!(m.lipschitz_bound >= 0.0 && m.lipschitz_bound < 1.0)) {
    throw ModelError("NLAR Lipschitz bound must lie in [0, 1)");
  }
  const auto check = check_lipschitz(m);
  if (!check.consistent) {
    throw ModelError("NLAR map has observed Lipschitz constant " + std::to_string(check.observed) +
                     " above the asserted bound " + std::to_string(m.lipschitz_bound));
  }
}

std::vector<double> run_arma(const ArmaModel& m, std::span<const double> e, std::size_t n, std::size_t burn_in) {
  const std::size_t total = burn_in + n;
  const std::size_t p = m.ar.size();
  const std::size_t q = m.ma.size();
  std::vector<double> x(total);
  for (std::size_t t = 0; t < total; ++t) {
    double v = m.a0 + e[t];
    for (std::size_t j = 1; j <= std::min(p, t); ++j) v += m.ar[j - 1] * x[t - j];
    for (std::size_t j = 1; j <= std::min(q, t); ++j) v += m.ma[j - 1] * e[t - j];
    x[t] = v;
  }
  return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

template <class Map>
std::vector<double> run_markov(const Map& r, std::span<const double> e, std::size_t n, std::size_t burn_in) {
  std::vector<double> out;
  out.reserve(n);
  double x = e[0];
  if (burn_in == 0) out.push_back(x);
  for (std::size_t t = 1; t < burn_in + n; ++t) {
    x = r(x) + e[t];
    if (t >= burn_in) out.push_back(x);
  }
  return out;
}

std::vector<double> run_linear(const LinearProcess& m, std::span<const double> e, std::size_t n) {
  const std::size_t K = m.coeffs.size() - 1;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    double v = 0.0;
    for (std::size_t k = 0; k <= K; ++k) v += m.coeffs[k] * e[t + K - k];
    out[t] = m.mean + v;
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<double> run_validated(const TimeSeriesModel& model, std::span<const double> e, std::size_t n,
                                  std::size_t burn_in) {
  return std::visit(Overloaded{
                        [&](const ArmaModel& m) { return run_arma(m, e, n, burn_in); },
                        [&](const LinearProcess& m) { return run_linear(m, e, n); },
                        [&](const NlarModel& m) { return run_markov(m.r, e, n, burn_in); },
                        [&](const TarModel& m) {
                          return run_markov([&m](double x) { return m.map(x); }, e, n, burn_in);
                        },
                    },
                    model);
}

}  // namespace detail

using detail::run_validated;

LipschitzCheck check_lipschitz(const NlarModel& model, double half_range, std::size_t points) {
  constexpr double kTolerance = 1e-6;
  LipschitzCheck result;
  if (!model.r || points < 2) return result;
  const double step = 2.0 * half_range / static_cast<double>(points - 1);
  double prev = model.r(-half_range);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = -half_range + step * static_cast<double>(i);
    const double cur = model.r(x);
    result.observed = std::max(result.observed, std::fabs(cur - prev) / step);
    prev = cur;
  }
  result.consistent = result.observed <= model.lipschitz_bound + kTolerance;
  return result;
}

void validate_model(const TimeSeriesModel& model) {
  std::visit(Overloaded{
                 [](const ArmaModel& m) {
                   const auto report = arma_check_stationary(m);
                   if (!report.stationary) throw ModelError("ARMA model rejected: " + report.diagnostic);
                 },
                 [](const LinearProcess& m) { validate_linear(m); },
                 [](const NlarModel& m) { validate_nlar(m); },
                 [](const TarModel& m) { validate_tar(m); },
             },
             model);
}

double contraction_proxy(const TimeSeriesModel& model) {
  return std::visit(Overloaded{
                        [](const ArmaModel& m) {
                          const auto moduli = arma_check_stationary(m).ar_root_moduli;
                          return moduli.empty() ? 0.0 : moduli.front();
                        },
                        [](const LinearProcess&) { return 0.0; },
                        [](const NlarModel& m) { return m.lipschitz_bound; },
                        [](const TarModel& m) { return m.contraction(); },
                    },
                    model);
}

std::size_t default_burn_in(const TimeSeriesModel& model) {
  if (std::holds_alternative<LinearProcess>(model)) return 0;
  const double rho = std::min(contraction_proxy(model), 1.0 - 1e-9);
  const double steps = 50.0 * std::ceil(1.0 / (1.0 - rho));
  return std::max<std::size_t>(1000, static_cast<std::size_t>(steps));
}

std::size_t innovations_required(const TimeSeriesModel& model, std::size_t n, std::size_t burn_in) {
  if (const auto* lin = std::get_if<LinearProcess>(&model)) return n + lin->coeffs.size() - 1;
  return burn_in + n;
}

std::vector<double> simulate_from_innovations(const TimeSeriesModel& model, std::span<const double> innovations,
                                              std::size_t n, std::size_t burn_in) {
  if (n == 0) throw DomainError("simulation length must be at least 1");
  validate_model(model);
  if (innovations.size() < innovations_required(model, n, burn_in)) {
    throw DomainError("innovation buffer too short for the requested simulation");
  }
  return run_validated(model, innovations, n, burn_in);
}

std::vector<double> simulate(const TimeSeriesModel& model, std::size_t n, std::size_t burn_in, std::uint64_t seed) {
  validate_model(model);
  if (n == 0) throw DomainError("simulation length must be at least 1");
  const std::size_t minimum = default_burn_in(model);
  if (burn_in < minimum) {
    throw DomainError("burn-in " + std::to_string(burn_in) + " is below the required " + std::to_string(minimum));
  }
  NoiseSampler sampler(noise_of(model), seed);
  const auto innovations = sampler.draw(innovations_required(model, n, burn_in));
  return run_validated(model, innovations, n, burn_in);
}

std::vector<double> simulate(const TimeSeriesModel& model, std::size_t n, std::uint64_t seed) {
  return simulate(model, n, default_burn_in(model), seed);
}

}  // namespace polyfreq
