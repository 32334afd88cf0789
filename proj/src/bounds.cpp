#include "sburgers/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sburgers/nonlinearity.hpp"
#include "sburgers/philox.hpp"

namespace sburgers {

std::string to_string(ConstantSource source) {
  switch (source) {
    case ConstantSource::closed_form:
      return "closed-form";
    case ConstantSource::derived_certified:
      return "derived-certified";
    case ConstantSource::estimated:
      return "estimated";
  }
  return "unknown";
}

bool within_bound(double lhs, double rhs) noexcept {
  return lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

namespace {

// H_r norm of all modes of a noise row.
double row_norm(std::span<const double> row, std::size_t modes, double r, const ModelParams& params) {
  double acc = 0.0;
  for (std::size_t n = 1; n <= modes; ++n) {
    acc += std::pow(-eigenvalue(n, params), 2.0 * r) * row[n - 1] * row[n - 1];
  }
  return std::sqrt(acc);
}

void require_matching(const Trajectory& traj, const NoisePathSet& noise) {
  if (traj.states.empty()) throw InvalidArgument("bound check: empty trajectory");
  if (noise.times() != traj.times) throw InvalidArgument("bound check: noise grid differs from trajectory");
  if (noise.modes() < traj.modes()) throw InvalidArgument("bound check: noise coarser than trajectory");
}

// Scans grid times, keeping the point of least relative slack.
template <class Lhs, class Rhs>
void scan(BoundReport& report, const Trajectory& traj, Lhs lhs_at, Rhs rhs_at) {
  report.pass = true;
  double worst = HUGE_VAL;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double l = lhs_at(k);
    const double r = rhs_at(k);
    const bool ok = within_bound(l, r);
    const double rel = (r - l) / std::max(1.0, std::abs(r));
    if (!ok) report.pass = false;
    if (rel < worst) {
      worst = rel;
      report.lhs = l;
      report.rhs = r;
      report.worst_time = traj.times[k];
    }
  }
}

}  // namespace

double gronwall_rhs(double xi_norm, double o_norm_now, double o_sup_half, const ModelParams& params) {
  const double B = embedding_bracket(params);
  const double C = 3.0 * params.c1 * params.c1 / (8.0 * std::abs(params.c0)) * B * B;
  const double bracket = 1.0 + o_sup_half * o_sup_half;
  const double growth = C * bracket * bracket * params.T;
  return o_norm_now + std::sqrt(xi_norm * xi_norm + growth) * std::exp(0.5 * growth);
}

BoundReport gronwall_bound(const Trajectory& traj, const NoisePathSet& noise,
                           const SolverConfig& config, double iota) {
  if (iota != 0.5) throw InvalidArgument("gronwall_bound: certified constants exist only for iota = 1/2");
  require_matching(traj, noise);
  const ModelParams& params = config.params;
  const std::size_t M = noise.modes();

  BoundReport report;
  report.name = "gronwall";
  report.mode = "certified";
  const double S = noise.sup_norm(M, 0.5, params);
  const double xi_norm = hr_norm(config.xi, 0.0, params);
  const double B = embedding_bracket(params);
  report.parameters = {{"iota", iota}, {"T", params.T}, {"noise_sup_half", S}, {"xi_norm", xi_norm}};
  report.constants = {
      {"embedding_bracket", B, ConstantSource::closed_form},
      {"growth_C", 3.0 * params.c1 * params.c1 / (8.0 * std::abs(params.c0)) * B * B,
       ConstantSource::closed_form},
  };
  scan(
      report, traj, [&](std::size_t k) { return hr_norm(traj.states[k], 0.0, params); },
      [&](std::size_t k) { return gronwall_rhs(xi_norm, row_norm(noise.row(k), M, 0.0, params), S, params); });
  return report;
}

double bootstrap_rho_rhs(double xi_rho, double o_rho_now, double z_sup_sq, double rho, double alpha1,
                         double K, const ModelParams& params) {
  const double e = 1.0 - alpha1 - rho;
  return xi_rho + o_rho_now + std::pow(params.T, e) / e * K * (1.0 + z_sup_sq);
}

BoundReport bootstrap_rho_bound(const Trajectory& traj, const NoisePathSet& noise,
                                const SolverConfig& config, double rho, double alpha1) {
  if (!(rho >= 0.0 && rho < 0.25)) throw InvalidArgument("bootstrap_rho_bound: need rho in [0, 1/4)");
  if (!(alpha1 > 0.75 && alpha1 < 1.0 - rho)) {
    throw InvalidArgument("bootstrap_rho_bound: need alpha1 in (3/4, 1 - rho)");
  }
  require_matching(traj, noise);
  const ModelParams& params = config.params;
  const std::size_t N = traj.modes();
  const GrowthConstants g = growth_constant(alpha1, GrowthItem::item_i, params);

  BoundReport report;
  report.name = "bootstrap_rho";
  report.mode = "certified";
  const double xi_rho = hr_norm(config.xi.resized(N), rho, params);
  const double x_sup = traj.sup_norm(0.0, params);
  report.parameters = {{"rho", rho}, {"alpha1", alpha1}, {"T", params.T}, {"x_sup_H", x_sup}};
  report.constants = {{"growth_K_item_i", g.K, ConstantSource::closed_form}};
  scan(
      report, traj, [&](std::size_t k) { return hr_norm(traj.states[k], rho, params); },
      [&](std::size_t k) {
        return bootstrap_rho_rhs(xi_rho, row_norm(noise.row(k), N, rho, params), x_sup * x_sup, rho,
                                 alpha1, g.K, params);
      });
  return report;
}

double estimate_middle_constant(double alpha2, std::size_t samples, std::size_t max_modes,
                                std::uint64_t seed, const ModelParams& params) {
  if (!(alpha2 > 0.25 && alpha2 < 0.5)) throw InvalidArgument("estimate_middle_constant: need alpha2 in (1/4, 1/2)");
  if (samples == 0 || max_modes == 0) throw InvalidArgument("estimate_middle_constant: empty sample budget");
  const double rho = (1.0 - alpha2) / 3.0;
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const PhiloxCounter r = philox4x32_10({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32), 0, 1},
                                          philox_key(seed));
    const std::size_t modes = 1 + r[0] % max_modes;
    const double amplitude = std::pow(10.0, 4.0 * to_open_unit(r[1], r[2]) - 2.0);
    const double decay = 2.0 * to_open_unit(r[3], r[1]);
    SpectralVector v(modes);
    auto c = v.coeffs_mut();
    for (std::size_t n = 1; n <= modes; ++n) {
      c[n - 1] = amplitude * std::pow(static_cast<double>(n), -decay) * indexed_normal(seed, s, n);
    }
    const double num = hr_norm(eval_F(v, params), -alpha2, params);
    const double den = 1.0 + std::pow(hr_norm(v, rho, params), 2.0);
    best = std::max(best, num / den);
  }
  return best;
}

double top_outer_rhs(double xi_kappa, double o_kappa_now, double x_sup_half_sq, double kappa,
                     const ModelParams& params) {
  const double K = growth_constant(0.0, GrowthItem::item_iii, params).K;
  return xi_kappa + o_kappa_now + std::pow(params.T, 1.0 - kappa) / (1.0 - kappa) * K * (1.0 + x_sup_half_sq);
}

BoundReport bootstrap_top_bound(const Trajectory& traj, const NoisePathSet& noise,
                                const SolverConfig& config, const TopBoundOptions& options) {
  const double kappa = options.kappa;
  if (!(kappa >= 0.5 && kappa < 1.0)) throw InvalidArgument("bootstrap_top_bound: need kappa in [1/2, 1)");
  require_matching(traj, noise);
  const ModelParams& params = config.params;
  const std::size_t N = traj.modes();
  const double K3 = growth_constant(0.0, GrowthItem::item_iii, params).K;
  const double xi_kappa = hr_norm(config.xi.resized(N), kappa, params);

  BoundReport report;
  report.name = "bootstrap_top";
  report.parameters = {{"kappa", kappa}, {"T", params.T}};
  report.constants = {{"growth_K_item_iii", K3, ConstantSource::closed_form}};
  auto lhs_at = [&](std::size_t k) { return hr_norm(traj.states[k], kappa, params); };

  if (options.mode == TopBoundMode::certified_outer) {
    report.mode = "certified";
    const double x_half = traj.sup_norm(0.5, params);
    report.parameters["x_sup_half"] = x_half;
    scan(report, traj, lhs_at, [&](std::size_t k) {
      return top_outer_rhs(xi_kappa, row_norm(noise.row(k), N, kappa, params), x_half * x_half, kappa, params);
    });
    return report;
  }

  const double a1 = options.alpha1;
  const double a2 = options.alpha2;
  if (!(a2 > 0.25 && a2 < 0.5)) throw InvalidArgument("bootstrap_top_bound: need alpha2 in (1/4, 1/2)");
  if (!(a1 > 0.75 && a1 < (2.0 + a2) / 3.0)) {
    throw InvalidArgument("bootstrap_top_bound: need alpha1 in (3/4, (2 + alpha2)/3)");
  }
  report.mode = "estimated";
  const double rho = (1.0 - a2) / 3.0;
  const double C2 = options.middle_constant >= 0.0
                        ? options.middle_constant
                        : estimate_middle_constant(a2, options.middle_samples, 128, options.middle_seed, params);
  const double K1 = growth_constant(a1, GrowthItem::item_i, params).K;
  report.parameters["alpha1"] = a1;
  report.parameters["alpha2"] = a2;
  report.constants.push_back({"middle_C2", C2, ConstantSource::estimated});
  report.constants.push_back({"growth_K_item_i", K1, ConstantSource::closed_form});

  const double T = params.T;
  const double o_sup_kappa = noise.sup_norm(N, kappa, params);
  const double o_sup_half = noise.sup_norm(N, 0.5, params);
  const double o_sup_rho = noise.sup_norm(N, rho, params);
  const double x_sup_h = traj.sup_norm(0.0, params);
  const double e1 = 1.0 - a1 - rho;
  const double inner = 1.0 + hr_norm(config.xi, rho, params) + o_sup_rho +
                       std::pow(T, e1) / e1 * K1 * x_sup_h * x_sup_h;
  const double middle = 1.0 + hr_norm(config.xi, 0.5, params) + o_sup_half +
                        std::pow(T, 0.5 - a2) / (0.5 - a2) * C2 * inner * inner;
  const double rhs = xi_kappa + o_sup_kappa + std::pow(T, 1.0 - kappa) / (1.0 - kappa) * K3 * middle * middle;
  scan(report, traj, lhs_at, [&](std::size_t) { return rhs; });
  return report;
}

std::string reports_to_json(const std::vector<BoundReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json consts = nlohmann::json::array();
    for (const auto& c : r.constants) {
      consts.push_back({{"name", c.name}, {"value", c.value}, {"source", to_string(c.source)}});
    }
    arr.push_back({{"bound", r.name},
                   {"mode", r.mode},
                   {"parameters", r.parameters},
                   {"constants", consts},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"worst_time", r.worst_time},
                   {"slack", r.slack()},
                   {"pass", r.pass}});
  }
  return arr.dump(2);
}

}  // namespace sburgers
