#pragma once

// Run configuration, Monte-Carlo experiment drivers, slope fitting and
// result persistence.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sburgers/bounds.hpp"
#include "sburgers/noise.hpp"
#include "sburgers/solver.hpp"

namespace sburgers {

struct RunConfig {
  std::string experiment = "simulate";
  ModelParams params;

  // Noise: power law b_n = scale |mu_n|^{-beta} n^{-1/2-delta} with beta
  // taken from params, or explicit amplitudes when non-empty.
  double noise_delta = 0.05;
  double noise_scale = 1.0;
  std::size_t noise_modes = 256;
  std::vector<double> noise_amplitudes;

  std::size_t N = 64;
  std::size_t K = 4096;
  Integrator integrator = Integrator::exp_euler;
  std::vector<double> xi = {1.0};

  std::vector<std::size_t> ladder;
  std::size_t n_ref = 512;
  std::size_t paths = 100;
  std::uint64_t seed = 20240601;
  std::string out_dir = "out";

  double moment_alpha = 0.2;
  double moment_p = 6.0;
  std::size_t moment_n_keep = 64;

  double tolerance = 0.3;

  /// Defaults for one of: simulate, rates-noise, rates-galerkin, moments,
  /// check-bounds.
  static RunConfig defaults_for(const std::string& experiment);

  /// Throws InvalidArgument on any violated invariant.
  void validate() const;

  [[nodiscard]] std::string to_json() const;
  /// Missing keys keep their defaults_for(experiment) values. Throws
  /// InvalidArgument on malformed input.
  static RunConfig from_json(const std::string& text);

  [[nodiscard]] NoiseSpec noise_spec() const;
  [[nodiscard]] SolverConfig solver_config(std::size_t modes) const;
  [[nodiscard]] std::uint64_t path_seed(std::size_t index) const;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

struct SlopeFit {
  double slope;      ///< decay rate: minus the log2-log2 regression slope
  double stderr_;    ///< standard error of the slope
  double intercept;  ///< log2 of the fitted constant
};

/// Ordinary least squares of log2(error) on log2(n). Needs >= 4 points and
/// positive errors.
SlopeFit fit_slope(std::span<const double> n, std::span<const double> error);

struct RatePoint {
  std::size_t N;
  double mean;
  double median;
  std::vector<double> per_path;  ///< indexed like RateReport::path_seeds
};

struct RateReport {
  std::string experiment;
  std::vector<std::uint64_t> path_seeds;
  std::vector<RatePoint> points;
  bool degenerate = false;  ///< a mean error vanished; no slope fitted
  SlopeFit fit{};
  std::vector<double> per_path_slopes;  ///< NaN where a path is degenerate
  double threshold = 0.0;
  std::string threshold_formula;
  double tolerance = 0.3;
  bool pass = false;
};

/// 1 + 2 (beta - gamma).
double noise_tail_threshold(const ModelParams& params);
/// nu = (2 - 4 min{gamma, 1/2}) / 3.
double galerkin_nu(const ModelParams& params);
/// min{2 eps, 1 + 2 (beta - gamma), 2 (1 - gamma - nu)}.
double galerkin_threshold(const ModelParams& params);

RateReport run_noise_tail_rate(const RunConfig& config, unsigned threads = 1);

/// Throws std::runtime_error if a level-N native noise sample does not
/// reproduce the prefix of the reference sample.
RateReport run_galerkin_rate(const RunConfig& config, unsigned threads = 1);

struct MomentRun {
  std::vector<std::uint64_t> path_seeds;
  std::vector<double> sup_norms;
  MomentReport report;
};

MomentRun run_moment_check(const RunConfig& config, unsigned threads = 1);

struct PathBounds {
  std::uint64_t path_seed;
  std::vector<BoundReport> reports;
};

/// Gronwall, first-bootstrap and certified-outer top bounds on each path.
std::vector<PathBounds> run_bound_checks(const RunConfig& config, unsigned threads = 1);

struct SimulateRun {
  std::uint64_t path_seed;
  Trajectory trajectory;
};

SimulateRun run_simulate(const RunConfig& config);

/// Deterministic invariant suite on canned inputs. Writes one line per check
/// to `log` and returns true when every check passes. `growth_perturbation`
/// scales the certified item (iii) growth constant before it is verified.
bool run_selftest(std::ostream& log, double growth_perturbation = 1.0);

// Persistence. Each writer creates out_dir if needed and overwrites files.
void write_config(const RunConfig& config);
void write_rate_outputs(const RunConfig& config, const RateReport& report);
void write_moment_outputs(const RunConfig& config, const MomentRun& run);
void write_bound_outputs(const RunConfig& config, const std::vector<PathBounds>& paths);
void write_simulate_outputs(const RunConfig& config, const SimulateRun& run);

std::string rate_report_json(const RateReport& report);

}  // namespace sburgers
