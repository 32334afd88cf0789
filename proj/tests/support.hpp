#pragma once

// Random generators for property tests and independent oracles used to
// validate the library. Nothing here calls into the nonlinearity or solver
// implementations under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "sburgers/spectral.hpp"

namespace testing_support {

using sburgers::ModelParams;
using sburgers::SpectralVector;

constexpr double kPi = std::numbers::pi;

/// Hand-rolled generator of random coefficient vectors.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  /// Gaussian coefficients with random algebraic decay n^{-s}, s in [0, 2],
  /// random overall scale 10^u, u in [log_lo, log_hi], and occasional sparsity.
  SpectralVector vector(std::size_t modes, double log_lo = -1.0, double log_hi = 1.0) {
    const double s = uniform(0.0, 2.0);
    const double scale = std::pow(10.0, uniform(log_lo, log_hi));
    const bool sparse = size(0, 3) == 0;
    SpectralVector v(modes);
    for (std::size_t n = 1; n <= modes; ++n) {
      if (sparse && coin()) continue;
      v[n - 1] = scale * normal() * std::pow(static_cast<double>(n), -s);
    }
    return v;
  }

  SpectralVector vector_upto(std::size_t max_modes, double log_lo = -1.0, double log_hi = 1.0) {
    return vector(size(1, max_modes), log_lo, log_hi);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// v(x) = sum a_n sqrt2 sin(n pi x), by direct summation.
inline double point_value(const SpectralVector& v, double x) {
  double s = 0.0;
  for (std::size_t n = 1; n <= v.size(); ++n) s += v[n - 1] * std::sin(static_cast<double>(n) * kPi * x);
  return std::numbers::sqrt2 * s;
}

inline double point_derivative(const SpectralVector& v, double x) {
  double s = 0.0;
  for (std::size_t n = 1; n <= v.size(); ++n) {
    s += v[n - 1] * static_cast<double>(n) * kPi * std::cos(static_cast<double>(n) * kPi * x);
  }
  return std::numbers::sqrt2 * s;
}

/// Quadrature oracle for F(v) = c1 v v': coefficient m is
/// int_0^1 c1 v(x) v'(x) sqrt2 sin(m pi x) dx by the trapezoid rule on
/// `points` intervals. The integrand is even about both endpoints, so the
/// rule converges spectrally.
inline std::vector<double> quadrature_F(const SpectralVector& v, std::size_t out_modes, double c1,
                                        std::size_t points = 100000) {
  std::vector<double> vals(points + 1), ders(points + 1);
  for (std::size_t j = 0; j <= points; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(points);
    vals[j] = point_value(v, x);
    ders[j] = point_derivative(v, x);
  }
  std::vector<double> out(out_modes, 0.0);
  const double h = 1.0 / static_cast<double>(points);
  for (std::size_t m = 1; m <= out_modes; ++m) {
    double acc = 0.0;
    for (std::size_t j = 1; j < points; ++j) {
      const double x = static_cast<double>(j) * h;
      acc += vals[j] * ders[j] * std::sin(static_cast<double>(m) * kPi * x);
    }
    out[m - 1] = c1 * std::numbers::sqrt2 * acc * h;
  }
  return out;
}

/// Independent O(N^2) formula for F = c1 v v' built from
/// sin(j pi x) cos(k pi x) = (sin((j+k) pi x) + sin((j-k) pi x)) / 2.
inline std::vector<double> convolution_F(std::span<const double> a, double c1) {
  const std::size_t N = a.size();
  std::vector<double> out(2 * N, 0.0);
  // v v' = sum_{j,k} a_j a_k k pi [sin((j+k) pi x) + sin((j-k) pi x)];
  // <sin(p pi x), e_m> = delta_{pm} / sqrt2.
  for (std::size_t j = 1; j <= N; ++j) {
    for (std::size_t k = 1; k <= N; ++k) {
      const double w = a[j - 1] * a[k - 1] * static_cast<double>(k) * kPi;
      out[j + k - 1] += w;
      if (j > k) out[j - k - 1] += w;
      if (k > j) out[k - j - 1] -= w;
    }
  }
  for (double& o : out) o *= c1 / std::numbers::sqrt2;
  return out;
}

/// Dormand-Prince 5(4) with adaptive step control for y' = f(t, y).
/// Returns y(t1). `rtol`/`atol` control the local error per step.
inline std::vector<double> dormand_prince(const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& f,
                                          std::vector<double> y, double t0, double t1, double rtol,
                                          double atol, std::size_t* steps_taken = nullptr) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
  double t = t0;
  double h = (t1 - t0) / 1000.0;
  std::size_t steps = 0;
  f(t, y, k1);
  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    f(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    f(t + h, y5, k7);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
      ++steps;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  if (steps_taken) *steps_taken = steps;
  return y;
}

/// Reference solution of the deterministic Galerkin ODE
/// a_n' = mu_n a_n + P_N F(a)_n by adaptive Dormand-Prince.
inline SpectralVector reference_galerkin_ode(const SpectralVector& xi, std::size_t N, double T,
                                             const ModelParams& params, double tol = 1e-11) {
  std::vector<double> y(N, 0.0);
  for (std::size_t n = 1; n <= std::min(N, xi.size()); ++n) y[n - 1] = xi[n - 1];
  auto rhs = [&](double, const std::vector<double>& a, std::vector<double>& out) {
    const std::vector<double> f = convolution_F(a, params.c1);
    for (std::size_t n = 1; n <= N; ++n) {
      const double mu = -params.c0 * kPi * kPi * static_cast<double>(n * n);
      out[n - 1] = mu * a[n - 1] + f[n - 1];
    }
  };
  return SpectralVector(dormand_prince(rhs, y, 0.0, T, tol, tol));
}

/// Max of |v| over a uniform grid with `points` interior points, by direct summation.
inline double grid_sup(const SpectralVector& v, std::size_t points) {
  double best = 0.0;
  for (std::size_t j = 1; j <= points; ++j) {
    best = std::max(best, std::abs(point_value(v, static_cast<double>(j) / static_cast<double>(points + 1))));
  }
  return best;
}

inline double grid_derivative_sup(const SpectralVector& v, std::size_t points) {
  double best = 0.0;
  for (std::size_t j = 0; j <= points + 1; ++j) {
    best = std::max(best, std::abs(point_derivative(v, static_cast<double>(j) / static_cast<double>(points + 1))));
  }
  return best;
}

/// int_0^1 v^4 dx by the trapezoid rule (integrand even about both ends).
inline double l4_fourth_power(const SpectralVector& v, std::size_t points = 4096) {
  double acc = 0.0;
  for (std::size_t j = 1; j < points; ++j) {
    const double u = point_value(v, static_cast<double>(j) / static_cast<double>(points));
    acc += u * u * u * u;
  }
  return acc / static_cast<double>(points);
}

}  // namespace testing_support
