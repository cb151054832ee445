#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "polyfreq/rng.hpp"

namespace polyfreq {

// Zero-mean innovation law.
class NoiseSpec {
 public:
  enum class Kind { gaussian, uniform, laplace };

  NoiseSpec() : NoiseSpec(Kind::gaussian, 1.0) {}
  static NoiseSpec gaussian(double sigma) { return NoiseSpec(Kind::gaussian, sigma); }
  // Uniform on (-c, c).
  static NoiseSpec uniform(double half_width) { return NoiseSpec(Kind::uniform, half_width); }
  static NoiseSpec laplace(double scale) { return NoiseSpec(Kind::laplace, scale); }

  Kind kind() const noexcept { return kind_; }
  // sigma, c or scale depending on kind.
  double parameter() const noexcept { return param_; }
  std::string name() const;

  double variance() const noexcept;
  double stddev() const noexcept;
  double pdf(double x) const;
  double cdf(double x) const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;

 private:
  NoiseSpec(Kind kind, double param);

  Kind kind_;
  double param_;
};

// Deterministic stream of innovations for one seed.
class NoiseSampler {
 public:
  NoiseSampler(const NoiseSpec& spec, std::uint64_t seed);

  double next();
  std::vector<double> draw(std::size_t count);

 private:
  NoiseSpec spec_;
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// X_n = a0 + sum_j ar[j-1] X_{n-j} + e_n + sum_j ma[j-1] e_{n-j}.
struct ArmaModel {
  double a0 = 0.0;
  std::vector<double> ar;
  std::vector<double> ma;
  NoiseSpec noise;
};

// X_n = mean + sum_{k=0}^{K} coeffs[k] e_{n-k}; an explicitly truncated MA(infinity).
struct LinearProcess {
  double mean = 0.0;
  std::vector<double> coeffs;
  NoiseSpec noise;
};

// X_n = r(X_{n-1}) + e_n with a caller-asserted Lipschitz bound rho < 1.
struct NlarModel {
  std::function<double(double)> r;
  double lipschitz_bound = 0.0;
  NoiseSpec noise;
};

// X_n = a max(X_{n-1}, 0) + b min(X_{n-1}, 0) + e_n.
struct TarModel {
  double a = 0.0;
  double b = 0.0;
  NoiseSpec noise;

  double map(double x) const noexcept { return x > 0.0 ? a * x : b * x; }
  double contraction() const noexcept;
};

using TimeSeriesModel = std::variant<ArmaModel, LinearProcess, NlarModel, TarModel>;

const NoiseSpec& noise_of(const TimeSeriesModel& model);
std::string family_name(const TimeSeriesModel& model);

}  // namespace polyfreq
