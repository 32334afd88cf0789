#pragma once

// Spectral Galerkin integrators for the projected mild equation
// X_t = e^{tA} P xi + int_0^t e^{(t-s)A} P F(X_s) ds + P O_t
// on a uniform time grid, driven by a precomputed noise path.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sburgers/noise.hpp"
#include "sburgers/spectral.hpp"

namespace sburgers {

enum class Integrator { exp_euler, ode_euler };

std::string to_string(Integrator integrator);
Integrator integrator_from_string(const std::string& name);

struct SolverConfig {
  std::size_t N = 32;
  std::size_t K = 1024;
  Integrator integrator = Integrator::exp_euler;
  SpectralVector xi = SpectralVector::unit(1, 1);
  ModelParams params;
  NoiseSpec spec;

  /// Throws InvalidArgument on N = 0, K = 0 or invalid params.
  void validate() const;
  [[nodiscard]] double dt() const noexcept { return params.T / static_cast<double>(K); }
  /// FNV-1a digest of every field that influences a trajectory.
  [[nodiscard]] std::uint64_t hash() const;
};

/// Raised when a coefficient leaves [-1e10, 1e10].
class BlowUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralVector> states;  ///< each of length N
  std::uint64_t config_hash = 0;
  std::uint64_t noise_seed = 0;
  std::uint64_t noise_checksum = 0;  ///< checksum of the noise modes 1..N used

  [[nodiscard]] std::size_t modes() const noexcept { return states.empty() ? 0 : states.front().size(); }

  /// sup_k |X(t_k)|_{H_r}.
  [[nodiscard]] double sup_norm(double r, const ModelParams& params) const;

  /// Columns t,mode,coefficient.
  void write_csv(std::ostream& os) const;

  /// JSON object with per-time norms |X|_H, |X|_{H_gamma}, |X|_{H_{1/2}}.
  [[nodiscard]] std::string norm_summary_json(const ModelParams& params) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// One left-point exponential step:
/// X' = e^{dt A}(X - O_now) + dt e^{dt A} P F(X) + O_next.
SpectralVector step_exp_euler(const SpectralVector& state, const SpectralVector& o_now,
                              const SpectralVector& o_next, double dt, const ModelParams& params);

/// One explicit Euler step on Y = X - O:
/// Y' = Y + dt (A Y + P F(Y + O_now)), X' = Y' + O_next.
/// Rejects dt |mu_N| > 1.
SpectralVector step_ode_euler(const SpectralVector& state, const SpectralVector& o_now,
                              const SpectralVector& o_next, double dt, const ModelParams& params);

/// Full trajectory at resolution N using modes 1..N of `noise`.
/// Throws InvalidArgument if the noise grid differs from uniform_grid(T, K)
/// or the noise has fewer than N modes; throws BlowUp on divergence.
Trajectory solve(const SolverConfig& config, const NoisePathSet& noise);

/// Zero noise path on the config grid with N modes.
NoisePathSet zero_noise(const SolverConfig& config);

}  // namespace sburgers
