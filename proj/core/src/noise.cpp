#include <algorithm>
#include <cmath>
#include <string>

#include "polyfreq/error.hpp"
#include "polyfreq/models.hpp"
#include "polyfreq/normal.hpp"

namespace polyfreq {

NoiseSpec::NoiseSpec(Kind kind, double param) : kind_(kind), param_(param) {
  if (!(param > 0.0) || !std::isfinite(param)) {
    throw ModelError("noise parameter must be positive and finite, got " + std::to_string(param));
  }
}

std::string NoiseSpec::name() const {
  switch (kind_) {
    case Kind::gaussian: return "gaussian";
    case Kind::uniform: return "uniform";
    case Kind::laplace: return "laplace";
  }
  return "unknown";
}

double NoiseSpec::variance() const noexcept {
  switch (kind_) {
    case Kind::gaussian: return param_ * param_;
    case Kind::uniform: return param_ * param_ / 3.0;
    case Kind::laplace: return 2.0 * param_ * param_;
  }
  return 0.0;
}

double NoiseSpec::stddev() const noexcept { return std::sqrt(variance()); }

double NoiseSpec::pdf(double x) const {
  switch (kind_) {
    case Kind::gaussian: return normal_pdf(x, 0.0, param_);
    case Kind::uniform: return std::fabs(x) < param_ ? 0.5 / param_ : 0.0;
    case Kind::laplace: return std::exp(-std::fabs(x) / param_) / (2.0 * param_);
  }
  return 0.0;
}

double NoiseSpec::cdf(double x) const {
  switch (kind_) {
    case Kind::gaussian: return normal_cdf(x, 0.0, param_);
    case Kind::uniform: return std::clamp((x + param_) / (2.0 * param_), 0.0, 1.0);
    case Kind::laplace:
      return x < 0.0 ? 0.5 * std::exp(x / param_) : 1.0 - 0.5 * std::exp(-x / param_);
  }
  return 0.0;
}

NoiseSampler::NoiseSampler(const NoiseSpec& spec, std::uint64_t seed)
    : spec_(spec), engine_(make_engine(seed)) {}

double NoiseSampler::next() {
  const double p = spec_.parameter();
  switch (spec_.kind()) {
    case NoiseSpec::Kind::gaussian:
      return p * normal_(engine_);
    case NoiseSpec::Kind::uniform:
      return p * (2.0 * uniform_(engine_) - 1.0);
    case NoiseSpec::Kind::laplace: {
      double u = 0.0;
      do { u = uniform_(engine_); } while (u == 0.0);
      const double centred = u - 0.5;
      return -p * std::copysign(1.0, centred) * std::log1p(-2.0 * std::fabs(centred));
    }
  }
  return 0.0;
}

std::vector<double> NoiseSampler::draw(std::size_t count) {
  std::vector<double> out(count);
  for (double& e : out) e = next();
  return out;
}

double TarModel::contraction() const noexcept { return std::max(std::fabs(a), std::fabs(b)); }

const NoiseSpec& noise_of(const TimeSeriesModel& model) {
  return std::visit([](const auto& m) -> const NoiseSpec& { return m.noise; }, model);
}

std::string family_name(const TimeSeriesModel& model) {
  switch (model.index()) {
    case 0: return "arma";
    case 1: return "linear";
    case 2: return "nlar";
    case 3: return "nlar_tar";
  }
  return "unknown";
}

}  // namespace polyfreq
