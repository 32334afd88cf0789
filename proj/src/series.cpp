#include "sburgers/series.hpp"

#include <cmath>

#include "sburgers/spectral.hpp"

namespace sburgers {

SeriesEnclosure power_sum(double s, std::size_t cutoff) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw InvalidArgument("power_sum: exponent must exceed 1");
  }
  if (cutoff < 2) cutoff = 2;

  double head = 0.0;
  for (std::size_t n = cutoff - 1; n >= 1; --n) {
    head += std::pow(static_cast<double>(n), -s);
  }

  const double N = static_cast<double>(cutoff);
  const double integral = std::pow(N, 1.0 - s) / (s - 1.0);
  const double half_term = 0.5 * std::pow(N, -s);
  const double b2_term = s * std::pow(N, -s - 1.0) / 12.0;
  const double b4_term = s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;

  const double upper_tail = integral + half_term + b2_term;
  const double lower_tail = upper_tail - b4_term;
  return {head + lower_tail, head + upper_tail};
}

double scaled_power_sum_upper(double scale, double s) {
  return std::pow(scale, -s) * power_sum(s).upper;
}

}  // namespace sburgers
