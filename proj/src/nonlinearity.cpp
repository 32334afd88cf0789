#include "sburgers/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "sburgers/series.hpp"
#include "transform.hpp"

namespace sburgers {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Below this size the quadratic loop beats two transforms.
constexpr std::size_t kFastThreshold = 48;

std::size_t dealiased_intervals(std::size_t modes) {
  std::size_t L = 4;
  while (L < 4 * modes) L *= 2;
  return L;
}

// Cosine coefficients d_m, m = 1..P+Q, of the product v w of two sine series:
// v w = 2 sum_{j,k} a_j b_k sin(j pi x) sin(k pi x)
//     = sum_{j,k} a_j b_k [cos((j-k) pi x) - cos((j+k) pi x)].
// The constant term is dropped since it vanishes under differentiation.
std::vector<double> product_cosine_coefs(std::span<const double> a, std::span<const double> b) {
  const std::size_t P = a.size();
  const std::size_t Q = b.size();
  std::vector<double> d(P + Q, 0.0);
  for (std::size_t j = 1; j <= P; ++j) {
    const double aj = a[j - 1];
    if (aj == 0.0) continue;
    for (std::size_t k = 1; k <= Q; ++k) {
      const double p = aj * b[k - 1];
      if (j != k) d[(j > k ? j - k : k - j) - 1] += p;
      d[j + k - 1] -= p;
    }
  }
  return d;
}

// d(c_m cos(m pi x)) = -m pi c_m sin(m pi x) = -(m pi c_m / sqrt2) e_m, scaled by `factor`.
SpectralVector differentiate_cosine(const std::vector<double>& c, double factor) {
  SpectralVector out(c.size());
  auto o = out.coeffs_mut();
  for (std::size_t m = 1; m <= c.size(); ++m) {
    o[m - 1] = -factor * static_cast<double>(m) * kPi * c[m - 1] / kSqrt2;
  }
  return out;
}

void require_finite(const SpectralVector& v, const char* what) {
  if (!v.all_finite()) throw InvalidArgument(std::string(what) + ": non-finite input");
}

}  // namespace

SpectralVector eval_F_direct(const SpectralVector& v, const ModelParams& params) {
  require_finite(v, "eval_F_direct");
  // F(v) = (c1/2) d(v^2)
  return differentiate_cosine(product_cosine_coefs(v.coeffs(), v.coeffs()), 0.5 * params.c1);
}

SpectralVector eval_F_fast(const SpectralVector& v, const ModelParams& params) {
  require_finite(v, "eval_F_fast");
  const std::size_t N = v.size();
  if (N == 0) return {};
  const std::size_t L = dealiased_intervals(N);
  auto& tf = detail::GridTransform::for_thread(L);

  std::vector<double> samples(L + 1, 0.0);
  tf.sine_synthesis(v.coeffs(), std::span<double>(samples).subspan(1, L - 1));
  for (std::size_t j = 1; j < L; ++j) samples[j] *= samples[j];

  std::vector<double> c(2 * N, 0.0);
  tf.cosine_analysis(samples, c);
  return differentiate_cosine(c, 0.5 * params.c1);
}

SpectralVector eval_F(const SpectralVector& v, const ModelParams& params) {
  return v.size() <= kFastThreshold ? eval_F_direct(v, params) : eval_F_fast(v, params);
}

SpectralVector eval_F_prime(const SpectralVector& v, const SpectralVector& w,
                            const ModelParams& params) {
  require_finite(v, "eval_F_prime");
  require_finite(w, "eval_F_prime");
  // F'(v)w = c1 d(v w)
  return differentiate_cosine(product_cosine_coefs(v.coeffs(), w.coeffs()), params.c1);
}

double energy_pairing(const SpectralVector& v, const ModelParams& params) {
  return inner(v, eval_F_direct(v, params));
}

GrowthConstants growth_constant(double alpha, GrowthItem which, const ModelParams& params) {
  require_positive_c0(params);
  const double abs_c1 = std::abs(params.c1);
  switch (which) {
    case GrowthItem::item_i: {
      if (!(alpha > 0.75) || !std::isfinite(alpha)) {
        throw InvalidArgument("growth_constant: item (i) requires alpha > 3/4");
      }
      // sum_n (pi n)^{2 - 4 alpha}
      const double series = scaled_power_sum_upper(kPi, 4.0 * alpha - 2.0);
      const double K = abs_c1 * std::pow(params.c0, -alpha) * std::sqrt(0.5 * series);
      return {alpha, K, "closed-form"};
    }
    case GrowthItem::item_iii:
      return {0.0, abs_c1 / (std::sqrt(3.0) * params.c0), "closed-form"};
  }
  throw InvalidArgument("growth_constant: unknown item");
}

namespace {

double tolerance_for(double scale) { return 1e-12 * (1.0 + scale); }

InequalityCheck make_check(double lhs, double rhs) {
  return {lhs <= rhs + tolerance_for(std::abs(rhs)), lhs, rhs};
}

}  // namespace

InequalityCheck lipschitz_check(const SpectralVector& v, const SpectralVector& w,
                                const ModelParams& params) {
  const double lhs = hr_norm(eval_F_direct(v, params) - eval_F_direct(w, params), 0.0, params);
  const double K = growth_constant(0.0, GrowthItem::item_iii, params).K;
  const double rhs =
      K * (hr_norm(v, 0.5, params) + hr_norm(w, 0.5, params)) * hr_norm(v - w, 0.5, params);
  return make_check(lhs, rhs);
}

double embedding_bracket(const ModelParams& params) {
  require_positive_c0(params);
  const double linf = 1.0 / std::sqrt(3.0 * params.c0);
  const double l4_squared = 1.0 / (std::sqrt(3.0) * params.c0 * kPi);
  return linf + l4_squared;
}

InequalityCheck coercivity_check(const SpectralVector& v, const SpectralVector& w, double iota,
                                 const ModelParams& params) {
  if (iota != 0.5) {
    throw InvalidArgument("coercivity_check: certified constants exist only for iota = 1/2");
  }
  const double lhs = inner(v, eval_F_direct(v + w, params));
  const double B = embedding_bracket(params);
  const double v_h = hr_norm(v, 0.0, params);
  const double w_iota = hr_norm(w, iota, params);
  const double v_half = hr_norm(v, 0.5, params);
  const double rhs = 3.0 * params.c1 * params.c1 / (8.0 * params.c0) * B * B *
                         (v_h * v_h + w_iota * w_iota) * w_iota * w_iota +
                     v_half * v_half;
  return make_check(lhs, rhs);
}

double extension_lipschitz_ratio(const SpectralVector& v, const SpectralVector& w,
                                 const ModelParams& params) {
  const SpectralVector diff = v - w;
  const double denom_diff = hr_norm(diff, 0.125, params);
  if (denom_diff == 0.0) return 0.0;
  const double num = hr_norm(eval_F_direct(v, params) - eval_F_direct(w, params), -0.5, params);
  return num / (denom_diff * (1.0 + hr_norm(v, 0.125, params) + hr_norm(w, 0.125, params)));
}

double monotonicity_constant(const ModelParams& params) {
  require_positive_c0(params);
  const double c1_sq = params.c1 * params.c1;
  return c1_sq * c1_sq * (1.0 + 1.0 / (kPi * kPi)) / (1024.0 * params.c0 * params.c0 * params.c0);
}

MonotonicityCheck monotonicity_check(const SpectralVector& v, const SpectralVector& w,
                                     double eps, const ModelParams& params) {
  if (!(eps > 0.0)) throw InvalidArgument("monotonicity_check: eps must be positive");
  const double lhs = inner(eval_F_prime(v, w, params), w);
  const double v_half = hr_norm(v, 0.5, params);
  const double w_h = hr_norm(w, 0.0, params);
  const double w_half = hr_norm(w, 0.5, params);
  const double fixed = eps * v_half * v_half * w_h * w_h + w_half * w_half;
  const double rhs = fixed + monotonicity_constant(params) / (eps * eps) * w_h * w_h;

  double required = 0.0;
  if (w_h > 0.0 && lhs > fixed) required = eps * eps * (lhs - fixed) / (w_h * w_h);
  return {make_check(lhs, rhs), required};
}

InequalityCheck derivative_remainder_check(const SpectralVector& v, const SpectralVector& w,
                                           const ModelParams& params) {
  const SpectralVector remainder =
      eval_F_direct(v + w, params) - eval_F_direct(v, params) - eval_F_prime(v, w, params);
  const double lhs = hr_norm(remainder, 0.0, params);
  const double w_half = hr_norm(w, 0.5, params);
  const double rhs = growth_constant(0.0, GrowthItem::item_iii, params).K * w_half * w_half;
  return make_check(lhs, rhs);
}

}  // namespace sburgers
