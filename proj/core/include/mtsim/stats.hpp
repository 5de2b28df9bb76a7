#pragma once
#include <cmath>
#include <utility>

namespace mtsim {

// Wilson score interval for a binomial rate.
inline std::pair<double, double> wilson_interval(long successes, long trials,
                                                 double z = 1.96) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// round-half-up(scale * n^exponent), floored at 1.
inline long round_pow(int n, double exponent, double scale = 1.0) {
  const double v = scale * std::pow(static_cast<double>(n), exponent);
  const long r = static_cast<long>(std::floor(v + 0.5));
  return r < 1 ? 1 : r;
}

}  // namespace mtsim
