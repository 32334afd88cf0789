#pragma once

// Explicit right-hand sides of the a priori estimates for Galerkin
// trajectories, evaluated with certified constants where they exist and
// asserted against simulated paths.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sburgers/noise.hpp"
#include "sburgers/solver.hpp"

namespace sburgers {

enum class ConstantSource { closed_form, derived_certified, estimated };

std::string to_string(ConstantSource source);

struct BoundConstant {
  std::string name;
  double value;
  ConstantSource source;
};

struct BoundReport {
  std::string name;
  std::string mode;  ///< "certified" or "estimated"
  std::map<std::string, double> parameters;
  std::vector<BoundConstant> constants;
  double lhs = 0.0;  ///< at the grid time with the least slack
  double rhs = 0.0;
  double worst_time = 0.0;
  bool pass = false;

  [[nodiscard]] double slack() const noexcept { return rhs - lhs; }
  [[nodiscard]] bool certified() const noexcept { return mode == "certified"; }
};

/// lhs <= rhs + 1e-9 max(1, |rhs|).
bool within_bound(double lhs, double rhs) noexcept;

/// Exponential-Gronwall bound on |X_t|_H for iota = 1/2:
/// |O_t| + (|xi|^2 + C [1 + S^2]^2 T)^{1/2} exp((C/2) [1 + S^2]^2 T),
/// C = 3 c1^2/(8 c0) B^2, B = embedding_bracket, S = sup_u |O_u|_{H_{1/2}}.
double gronwall_rhs(double xi_norm, double o_norm_now, double o_sup_half, const ModelParams& params);

/// Checks |X(t_k)|_H <= gronwall_rhs at every grid time. `noise` must be the
/// path that drove `traj` and may carry more modes than the trajectory; all
/// noise norms are taken over every mode it carries.
BoundReport gronwall_bound(const Trajectory& traj, const NoisePathSet& noise,
                           const SolverConfig& config, double iota = 0.5);

/// |P xi|_rho + |O_t|_rho + T^{1-a-rho}/(1-a-rho) K (1 + z_sup_sq).
double bootstrap_rho_rhs(double xi_rho, double o_rho_now, double z_sup_sq, double rho, double alpha1,
                         double K, const ModelParams& params);

/// First bootstrap layer with rho in [0, 1/4), alpha1 in (3/4, 1 - rho), the
/// trajectory itself as the frozen integrand and K from growth_constant(item_i).
/// Noise norms use modes 1..N, the part of the path the trajectory saw.
BoundReport bootstrap_rho_bound(const Trajectory& traj, const NoisePathSet& noise,
                                const SolverConfig& config, double rho = 0.0, double alpha1 = 0.8);

enum class TopBoundMode {
  certified_outer,  ///< outer layer only, realized sup |X|_{1/2} substituted
  estimated,        ///< full three-layer chain with a sampled middle constant
};

/// Sampled sup of |F(v)|_{H_{-alpha2}} / (1 + |v|_{H_{(1-alpha2)/3}}^2) over
/// random v with up to max_modes modes. Not certified.
double estimate_middle_constant(double alpha2, std::size_t samples, std::size_t max_modes,
                                std::uint64_t seed, const ModelParams& params);

struct TopBoundOptions {
  double kappa = 0.9;
  TopBoundMode mode = TopBoundMode::certified_outer;
  double alpha1 = 0.76;  ///< estimated mode; needs 3/4 < alpha1 < (2 + alpha2)/3
  double alpha2 = 0.3;   ///< estimated mode; needs 1/4 < alpha2 < 1/2
  double middle_constant = -1.0;  ///< estimated mode; sampled when negative
  std::size_t middle_samples = 100000;
  std::uint64_t middle_seed = 0x5eed;
};

/// Certified outer layer:
/// |P xi|_kappa + |O_t|_kappa + T^{1-kappa}/(1-kappa) K_iii (1 + x_sup_half_sq).
double top_outer_rhs(double xi_kappa, double o_kappa_now, double x_sup_half_sq, double kappa,
                     const ModelParams& params);

BoundReport bootstrap_top_bound(const Trajectory& traj, const NoisePathSet& noise,
                                const SolverConfig& config, const TopBoundOptions& options = {});

/// JSON array of reports.
std::string reports_to_json(const std::vector<BoundReport>& reports);

}  // namespace sburgers
