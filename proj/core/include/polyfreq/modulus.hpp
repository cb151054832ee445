#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "polyfreq/ecdf.hpp"

namespace polyfreq {

// G_n(x) = sqrt(n) (F_n(x) - F(x)).
template <class Cdf>
double empirical_process(const EmpiricalCdf& ecdf, const Cdf& truth_cdf, double x) {
  return std::sqrt(static_cast<double>(ecdf.size())) * (ecdf(x) - truth_cdf(x));
}

// Delta_n(b) = sup_{|u - v| <= b} |G_n(u) - G_n(v)|, computed from the
// finitely many window shapes that can attain the supremum rather than on a
// grid. Windows are (v, u] to match the right-continuous F_n.
//
// With H = F - F_n (increasing between observations, dropping at them):
//  * upward excursions H(v) - H(u) are attained with v just below one
//    observation and u at another, closer than b: a sliding-window maximum;
//  * downward excursions H(u) - H(v) are attained with v at an observation or
//    u just below one, the other end either at an observation or exactly b
//    away, or with both ends free at a local maximum of F(v + b) - F(v).
// The free-window case locates local maxima of F(v + b) - F(v) by a scan
// over the data range (plus margins) refined by golden-section search; it is
// exact whenever those maxima are isolated at the scan resolution, which
// holds for the smooth marginals used here. O(n log n + scan).
double modulus_exact(const EmpiricalCdf& ecdf, const std::function<double(double)>& truth_cdf, double b);

struct ModulusEnvelope {
  double term1 = 0.0;  // sqrt(b ln n)
  double term2 = 0.0;  // b kappa_n, kappa_n = sqrt(ln n) ln ln n
};

// Throws DomainError for n < 16 or b <= 0.
ModulusEnvelope modulus_envelope(std::uint64_t n, double b);

}  // namespace polyfreq
