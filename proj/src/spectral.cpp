#include "sburgers/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sburgers/series.hpp"

namespace sburgers {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_finite(const std::vector<double>& c) {
  for (double x : c) {
    if (!std::isfinite(x)) throw InvalidArgument("SpectralVector: non-finite coefficient");
  }
}

std::size_t default_points(std::size_t modes, std::size_t points) {
  return points > 0 ? points : 4 * std::max<std::size_t>(modes, 1) + 1;
}

}  // namespace

SpectralVector::SpectralVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_);
}

SpectralVector::SpectralVector(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  require_finite(coeffs_);
}

SpectralVector SpectralVector::unit(std::size_t n, std::size_t modes) {
  if (n == 0 || n > modes) throw InvalidArgument("SpectralVector::unit: mode out of range");
  SpectralVector v(modes);
  v.coeffs_[n - 1] = 1.0;
  return v;
}

SpectralVector SpectralVector::resized(std::size_t modes) const {
  SpectralVector out(modes);
  std::copy_n(coeffs_.begin(), std::min(modes, coeffs_.size()), out.coeffs_.begin());
  return out;
}

bool SpectralVector::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double x) { return std::isfinite(x); });
}

SpectralVector& SpectralVector::operator+=(const SpectralVector& rhs) {
  if (rhs.size() > size()) coeffs_.resize(rhs.size(), 0.0);
  for (std::size_t i = 0; i < rhs.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

SpectralVector& SpectralVector::operator-=(const SpectralVector& rhs) {
  if (rhs.size() > size()) coeffs_.resize(rhs.size(), 0.0);
  for (std::size_t i = 0; i < rhs.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

SpectralVector& SpectralVector::operator*=(double s) noexcept {
  for (double& x : coeffs_) x *= s;
  return *this;
}

bool operator==(const SpectralVector& a, const SpectralVector& b) noexcept {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 1; i <= n; ++i) {
    if (a.mode(i) != b.mode(i)) return false;
  }
  return true;
}

SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
SpectralVector operator*(double s, SpectralVector v) { return v *= s; }

double inner(const SpectralVector& a, const SpectralVector& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void ModelParams::validate() const {
  require_positive_c0(*this);
  if (!std::isfinite(c1)) throw InvalidArgument("ModelParams: c1 must be finite");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("ModelParams: T must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("ModelParams: eps must be positive");
  if (!(beta > -0.25) || !std::isfinite(beta)) throw InvalidArgument("ModelParams: beta must exceed -1/4");
  const double gamma_max = std::min(1.0, 0.5 + beta);
  if (!(gamma > 0.25 && gamma < gamma_max)) {
    throw InvalidArgument("ModelParams: gamma must lie in (1/4, min(1, 1/2 + beta))");
  }
}

void require_positive_c0(const ModelParams& params) {
  if (!(params.c0 > 0.0) || !std::isfinite(params.c0)) {
    throw InvalidArgument("ModelParams: c0 must be positive");
  }
}

double eigenvalue(std::size_t n, const ModelParams& params) {
  if (n == 0) throw InvalidArgument("eigenvalue: mode index starts at 1");
  require_positive_c0(params);
  const double nd = static_cast<double>(n);
  return -params.c0 * kPi * kPi * nd * nd;
}

double hr_norm(const SpectralVector& v, double r, const ModelParams& params) {
  require_positive_c0(params);
  if (!std::isfinite(r)) throw InvalidArgument("hr_norm: exponent must be finite");
  double acc = 0.0;
  if (r == 0.0) {
    for (double a : v.coeffs()) acc += a * a;
    return std::sqrt(acc);
  }
  for (std::size_t n = 1; n <= v.size(); ++n) {
    const double a = v.mode(n);
    if (a == 0.0) continue;
    const double w = std::pow(-eigenvalue(n, params), r) * a;
    acc += w * w;
  }
  return std::sqrt(acc);
}

SpectralVector apply_semigroup(double t, const SpectralVector& v, const ModelParams& params) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("apply_semigroup: t must be >= 0");
  require_positive_c0(params);
  SpectralVector out = v;
  auto c = out.coeffs_mut();
  for (std::size_t n = 1; n <= c.size(); ++n) {
    c[n - 1] *= std::exp(eigenvalue(n, params) * t);
  }
  return out;
}

SpectralVector project(const SpectralVector& v, std::size_t n_keep) {
  SpectralVector out = v;
  auto c = out.coeffs_mut();
  for (std::size_t i = std::min(n_keep, c.size()); i < c.size(); ++i) c[i] = 0.0;
  return out;
}

std::vector<double> derivative_coefs(const SpectralVector& v) {
  std::vector<double> out(v.size());
  for (std::size_t n = 1; n <= v.size(); ++n) {
    out[n - 1] = static_cast<double>(n) * kPi * v.mode(n);
  }
  return out;
}

std::vector<double> evaluate(const SpectralVector& v, std::span<const double> x) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= v.size(); ++n) {
      acc += v.mode(n) * std::sin(static_cast<double>(n) * kPi * x[j]);
    }
    out[j] = kSqrt2 * acc;
  }
  return out;
}

std::vector<double> evaluate_derivative(const SpectralVector& v, std::span<const double> x) {
  const auto d = derivative_coefs(v);
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= d.size(); ++n) {
      acc += d[n - 1] * std::cos(static_cast<double>(n) * kPi * x[j]);
    }
    out[j] = kSqrt2 * acc;
  }
  return out;
}

namespace {

std::vector<double> interior_grid(std::size_t points) {
  std::vector<double> x(points);
  const double h = 1.0 / static_cast<double>(points + 1);
  for (std::size_t j = 0; j < points; ++j) x[j] = static_cast<double>(j + 1) * h;
  return x;
}

double max_abs(const std::vector<double>& values) {
  double m = 0.0;
  for (double y : values) m = std::max(m, std::abs(y));
  return m;
}

}  // namespace

double sampled_sup(const SpectralVector& v, std::size_t points) {
  return max_abs(evaluate(v, interior_grid(default_points(v.size(), points))));
}

double sampled_derivative_sup(const SpectralVector& v, std::size_t points) {
  // The derivative of a sine series often peaks at the boundary.
  std::vector<double> x = interior_grid(default_points(v.size(), points));
  x.push_back(0.0);
  x.push_back(1.0);
  return max_abs(evaluate_derivative(v, x));
}

BasisConstants basis_constants(double rho, const ModelParams& params) {
  if (!(rho >= 0.5) || !std::isfinite(rho)) {
    throw InvalidArgument("basis_constants: rho must be >= 1/2");
  }
  require_positive_c0(params);
  const double c0 = params.c0;

  // sum_n |c0 pi^2 n^2|^{-2 rho} = |c0|^{-2 rho} pi^{-4 rho} sum_n n^{-4 rho}
  const SeriesEnclosure zeta = power_sum(4.0 * rho);
  const double prefactor = std::pow(c0, -2.0 * rho) * std::pow(kPi, -4.0 * rho);

  BasisConstants out{};
  out.eig_sum = prefactor * zeta.upper;
  out.eig_sum_error = prefactor * zeta.width();
  // |d e_n|_H |mu_n|^{-rho} = |c0|^{-rho} (pi n)^{1 - 2 rho} is nonincreasing in n.
  out.deriv_ratio = std::pow(c0, -rho) * std::pow(kPi, 1.0 - 2.0 * rho);
  out.basis_sup = kSqrt2;

  const double eig_bound = std::pow(c0, -2.0 * rho) / 6.0;
  if (out.eig_sum - out.eig_sum_error > eig_bound * (1.0 + 1e-12)) {
    throw std::logic_error("basis_constants: eigenvalue sum exceeds |c0|^{-2 rho}/6");
  }
  if (out.deriv_ratio > std::pow(c0, -rho) * (1.0 + 1e-12)) {
    throw std::logic_error("basis_constants: derivative ratio exceeds |c0|^{-rho}");
  }
  return out;
}

double linf_bound(const SpectralVector& v, const ModelParams& params) {
  require_positive_c0(params);
  return hr_norm(v, 0.5, params) / std::sqrt(3.0 * params.c0);
}

double dinf_bound(const SpectralVector& v, double alpha, const ModelParams& params) {
  if (!(alpha > 0.25) || !std::isfinite(alpha)) {
    throw InvalidArgument("dinf_bound: alpha must exceed 1/4");
  }
  require_positive_c0(params);
  const double series = scaled_power_sum_upper(kPi, 4.0 * alpha);
  return kSqrt2 * std::pow(params.c0, -alpha - 0.5) * hr_norm(v, alpha + 0.5, params) *
         std::sqrt(series);
}

}  // namespace sburgers
