#pragma once

// Exact mode-by-mode sampling of the stochastic convolution
// O_t = int_0^t e^{(t-s)A} B dW_s for diagonal B e_n = b_n e_n. Each mode is a
// scalar Ornstein-Uhlenbeck process driven by Philox draws indexed by
// (seed, mode, step), so lower resolutions are exact prefixes of higher ones.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sburgers/spectral.hpp"

namespace sburgers {

enum class NoiseLaw {
  power,    ///< b_n = scale |mu_n|^{-beta} n^{-1/2-delta}, delta > 0
  explicit_amplitudes,  ///< finitely many user amplitudes
};

struct NoiseSpec {
  double beta = 0.5;
  double delta = 0.05;
  NoiseLaw law = NoiseLaw::power;
  double scale = 1.0;        ///< power-law prefactor
  std::vector<double> amps;  ///< b_1..b_M

  [[nodiscard]] std::size_t modes() const noexcept { return amps.size(); }

  /// Amplitudes b_n = scale |mu_n|^{-beta} n^{-1/2-delta}, n = 1..modes.
  static NoiseSpec power_law(double beta, double delta, std::size_t modes,
                             const ModelParams& params, double scale = 1.0);

  /// Arbitrary nonnegative amplitudes on finitely many modes.
  static NoiseSpec from_amplitudes(double beta, std::vector<double> amps);

  /// Throws if an amplitude is negative or non-finite, or if a power-law spec
  /// has delta <= 0 or amplitudes that do not follow the law.
  void validate(const ModelParams& params) const;

  /// sum_n b_n^2 |mu_n|^{2 beta} over the stored modes.
  [[nodiscard]] double hilbert_schmidt_sq(const ModelParams& params) const;
};

/// Uniform grid t_k = k T / K, k = 0..K.
std::vector<double> uniform_grid(double T, std::size_t steps);

/// Scalar OU transition over a step dt: o' = decay * o + sqrt(variance) * z.
struct OuTransition {
  double decay;
  double variance;
};

/// decay = e^{mu dt}, variance = b^2 (1 - e^{2 mu dt}) / (2 |mu|).
OuTransition ou_transition(double mu, double amplitude, double dt);

class NoisePathSet {
 public:
  NoisePathSet(std::vector<double> times, std::uint64_t seed, std::size_t modes);

  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] std::size_t steps() const noexcept { return times_.size() - 1; }
  [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// o_n(t_k), n 1-based.
  [[nodiscard]] double value(std::size_t k, std::size_t n) const { return values_[k * modes_ + n - 1]; }
  double& value_ref(std::size_t k, std::size_t n) { return values_[k * modes_ + n - 1]; }

  /// Modes 1..n_keep (n_keep <= modes()) at grid time k.
  [[nodiscard]] SpectralVector state(std::size_t k, std::size_t n_keep) const;
  [[nodiscard]] std::span<const double> row(std::size_t k) const {
    return {values_.data() + k * modes_, modes_};
  }

  /// Level-n path: the first n modes of this sample.
  [[nodiscard]] NoisePathSet prefix(std::size_t n) const;

  /// FNV-1a digest of the bit patterns of modes 1..n over all grid times.
  [[nodiscard]] std::uint64_t checksum(std::size_t n) const;

  /// max_k |P_{n_keep} O_{t_k}|_{H_r}.
  [[nodiscard]] double sup_norm(std::size_t n_keep, double r, const ModelParams& params) const;

  /// CSV with header time,mode,value; one row per (grid time, mode).
  void write_csv(std::ostream& os) const;

  friend bool operator==(const NoisePathSet& a, const NoisePathSet& b) = default;

 private:
  std::vector<double> times_;
  std::uint64_t seed_;
  std::size_t modes_;
  std::vector<double> values_;
};

/// Exact OU sampling of modes 1..spec.modes() (or the first `modes` if given
/// and smaller) on a strictly increasing grid starting at 0.
NoisePathSet sample_convolution(const NoiseSpec& spec, std::span<const double> grid,
                                std::uint64_t seed, const ModelParams& params,
                                std::size_t modes = 0);

/// sup over grid times of the H_gamma norm of modes n_cut+1..M. Requires
/// 1 <= n_cut < M.
double tail_sup_norm(const NoisePathSet& paths, std::size_t n_cut, double gamma,
                     const ModelParams& params);

/// Closed-form moment bound
/// T^a 2^{a-1} [p(p-1)/(p a - 1)] [Gamma(1-2a) sum_{n<=n_keep} b_n^2 |mu_n|^{2(a+gamma)-1}]^{1/2}.
/// Requires 0 < a < 1/2 - max(0, gamma - beta) and p > 1/a.
double moment_bound_rhs(const NoiseSpec& spec, std::size_t n_keep, double alpha, double gamma,
                        double p, double T, const ModelParams& params);

struct MomentReport {
  std::size_t paths;
  std::size_t n_keep;
  double alpha;
  double gamma;
  double p;
  double lhs;  ///< (mean over paths of sup_t |P O_t|_{H_gamma}^p)^{1/p}
  double rhs;
  [[nodiscard]] double ratio() const noexcept { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? 1e300 : 0.0); }
  [[nodiscard]] bool pass() const noexcept { return lhs <= rhs; }
};

/// Per-path sup_t |P_{n_keep} O_t|_{H_gamma}, one entry per seed.
std::vector<double> sampled_sup_norms(const NoiseSpec& spec, std::span<const double> grid,
                                      std::span<const std::uint64_t> seeds, std::size_t n_keep,
                                      double gamma, const ModelParams& params,
                                      unsigned threads = 1);

/// Empirical p-th moment of the sup norms against moment_bound_rhs.
MomentReport moment_bound_check(std::span<const double> sup_norms, const NoiseSpec& spec,
                                std::size_t n_keep, double alpha, double gamma, double p,
                                const ModelParams& params);

/// Deterministic order-independent sum (pairwise over index order).
double pairwise_sum(std::span<const double> values);

}  // namespace sburgers
