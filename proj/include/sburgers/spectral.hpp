#pragma once

// Sine-eigenbasis representation of states on (0,1) with zero Dirichlet
// boundary values, the interpolation-space norms built on the Dirichlet
// Laplacian, the diagonal semigroup, and the closed-form basis constants.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace sburgers {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients a_1..a_M of v = sum_n a_n sqrt(2) sin(n pi x).
///
/// Index 0 of the storage holds mode 1. Modes beyond size() are zero, so two
/// vectors of different length are equal when they agree after zero padding.
class SpectralVector {
 public:
  SpectralVector() = default;
  explicit SpectralVector(std::size_t modes) : coeffs_(modes, 0.0) {}
  explicit SpectralVector(std::vector<double> coeffs);
  SpectralVector(std::initializer_list<double> coeffs);

  /// The unit vector e_n padded to `modes` entries.
  static SpectralVector unit(std::size_t n, std::size_t modes);

  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }

  /// Coefficient of mode n (1-based); zero beyond size().
  [[nodiscard]] double mode(std::size_t n) const noexcept {
    return (n >= 1 && n <= coeffs_.size()) ? coeffs_[n - 1] : 0.0;
  }

  [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::span<double> coeffs_mut() noexcept { return coeffs_; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return coeffs_; }

  double operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  double& operator[](std::size_t i) noexcept { return coeffs_[i]; }

  /// Returns a copy zero-padded or truncated to `modes` entries.
  [[nodiscard]] SpectralVector resized(std::size_t modes) const;

  [[nodiscard]] bool all_finite() const noexcept;

  SpectralVector& operator+=(const SpectralVector& rhs);
  SpectralVector& operator-=(const SpectralVector& rhs);
  SpectralVector& operator*=(double s) noexcept;

  friend bool operator==(const SpectralVector& a, const SpectralVector& b) noexcept;

 private:
  std::vector<double> coeffs_;
};

SpectralVector operator+(SpectralVector a, const SpectralVector& b);
SpectralVector operator-(SpectralVector a, const SpectralVector& b);
SpectralVector operator*(double s, SpectralVector v);

/// H inner product of two coefficient vectors.
double inner(const SpectralVector& a, const SpectralVector& b) noexcept;

/// Model constants: diffusion c0, nonlinearity c1, horizon T and the
/// regularity indices (beta, gamma, eps) of the convergence result.
struct ModelParams {
  double c0 = 1.0;
  double c1 = -1.0;
  double T = 1.0;
  double beta = 0.5;
  double gamma = 0.3;
  double eps = 0.5;

  /// Checks every invariant: c0 > 0, T > 0, eps > 0, beta > -1/4 and
  /// 1/4 < gamma < min(1, 1/2 + beta).
  void validate() const;
};

/// Throws unless c0 is a positive finite number.
void require_positive_c0(const ModelParams& params);

/// mu_n = -c0 pi^2 n^2.
double eigenvalue(std::size_t n, const ModelParams& params);

/// (sum_n |mu_n|^{2r} a_n^2)^{1/2}; r may be negative.
double hr_norm(const SpectralVector& v, double r, const ModelParams& params);

/// a_n -> exp(mu_n t) a_n. Underflow flushes to zero.
SpectralVector apply_semigroup(double t, const SpectralVector& v, const ModelParams& params);

/// Keeps modes 1..n_keep and zeros the rest; the length is unchanged.
SpectralVector project(const SpectralVector& v, std::size_t n_keep);

/// Coefficients of dv in the cosine system sqrt(2) cos(n pi x), n >= 1:
/// entry n-1 holds n pi a_n.
std::vector<double> derivative_coefs(const SpectralVector& v);

/// Point values v(x) for each x.
std::vector<double> evaluate(const SpectralVector& v, std::span<const double> x);

/// Point values of dv/dx for each x.
std::vector<double> evaluate_derivative(const SpectralVector& v, std::span<const double> x);

/// max |v(x_j)| over the uniform interior grid x_j = j/(points+1).
/// The default grid has 4M+1 points.
double sampled_sup(const SpectralVector& v, std::size_t points = 0);

/// max |v'(x_j)| over the grid of sampled_sup plus the endpoints 0 and 1.
double sampled_derivative_sup(const SpectralVector& v, std::size_t points = 0);

struct BasisConstants {
  double eig_sum;       ///< sum_n |mu_n|^{-2 rho}, certified upper value
  double eig_sum_error; ///< width of the certified enclosure of eig_sum
  double deriv_ratio;   ///< sup_n |d e_n|_H |mu_n|^{-rho}
  double basis_sup;     ///< sup_n |e_n|_{L^inf}
};

/// Eigenvalue sums, derivative ratio and basis sup for rho >= 1/2. Throws if
/// rho < 1/2 or if a computed value exceeds its closed-form bound.
BasisConstants basis_constants(double rho, const ModelParams& params);

/// Certified upper bound |3 c0|^{-1/2} |v|_{H_{1/2}} on sup |v|.
double linf_bound(const SpectralVector& v, const ModelParams& params);

/// Certified upper bound on sup |dv/dx| for alpha > 1/4:
/// sqrt(2) |c0|^{-alpha-1/2} |v|_{H_{alpha+1/2}} (sum_n (pi n)^{-4 alpha})^{1/2}.
double dinf_bound(const SpectralVector& v, double alpha, const ModelParams& params);

}  // namespace sburgers
