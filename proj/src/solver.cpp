#include "sburgers/solver.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "sburgers/nonlinearity.hpp"

namespace sburgers {

namespace {

constexpr double kBlowUpLimit = 1e10;

class Fnv {
 public:
  void add(std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h_ ^= (x & 0xffu);
      h_ *= 0x100000001b3ull;
      x >>= 8;
    }
  }
  void add(double x) { add(std::bit_cast<std::uint64_t>(x)); }
  [[nodiscard]] std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

// P_N F(v) with v of length N.
SpectralVector projected_F(const SpectralVector& v, const ModelParams& params) {
  if (params.c1 == 0.0) return SpectralVector(v.size());
  return eval_F(v, params).resized(v.size());
}

void guard(const SpectralVector& v, std::size_t step) {
  for (double c : v.coeffs()) {
    if (!(std::abs(c) <= kBlowUpLimit)) {
      throw BlowUp("solver: coefficient magnitude exceeded 1e10 at step " + std::to_string(step));
    }
  }
}

void require_same_size(const SpectralVector& a, const SpectralVector& b, const char* what) {
  if (a.size() != b.size()) throw InvalidArgument(std::string(what) + ": length mismatch");
}

}  // namespace

std::string to_string(Integrator integrator) {
  return integrator == Integrator::exp_euler ? "exp_euler" : "ode_euler";
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "exp_euler") return Integrator::exp_euler;
  if (name == "ode_euler") return Integrator::ode_euler;
  throw InvalidArgument("unknown integrator '" + name + "'");
}

void SolverConfig::validate() const {
  params.validate();
  if (N == 0) throw InvalidArgument("SolverConfig: N must be >= 1");
  if (K == 0) throw InvalidArgument("SolverConfig: K must be >= 1");
  if (!xi.all_finite()) throw InvalidArgument("SolverConfig: xi must be finite");
  spec.validate(params);
}

std::uint64_t SolverConfig::hash() const {
  Fnv h;
  h.add(static_cast<std::uint64_t>(N));
  h.add(static_cast<std::uint64_t>(K));
  h.add(static_cast<std::uint64_t>(integrator));
  h.add(static_cast<std::uint64_t>(xi.size()));
  for (double c : xi.coeffs()) h.add(c);
  for (double p : {params.c0, params.c1, params.T, params.beta, params.gamma, params.eps}) h.add(p);
  h.add(spec.beta);
  h.add(spec.delta);
  h.add(static_cast<std::uint64_t>(spec.law));
  h.add(spec.scale);
  h.add(static_cast<std::uint64_t>(spec.amps.size()));
  for (double b : spec.amps) h.add(b);
  return h.value();
}

double Trajectory::sup_norm(double r, const ModelParams& params) const {
  double best = 0.0;
  for (const auto& s : states) best = std::max(best, hr_norm(s, r, params));
  return best;
}

void Trajectory::write_csv(std::ostream& os) const {
  os << "t,mode,coefficient\n";
  char buf[96];
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (std::size_t n = 1; n <= states[k].size(); ++n) {
      std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g\n", times[k], n, states[k][n - 1]);
      os << buf;
    }
  }
}

std::string Trajectory::norm_summary_json(const ModelParams& params) const {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["noise_seed"] = noise_seed;
  j["noise_checksum"] = noise_checksum;
  j["modes"] = modes();
  j["gamma"] = params.gamma;
  auto& rows = j["norms"] = nlohmann::json::array();
  for (std::size_t k = 0; k < states.size(); ++k) {
    rows.push_back({{"t", times[k]},
                    {"H", hr_norm(states[k], 0.0, params)},
                    {"H_gamma", hr_norm(states[k], params.gamma, params)},
                    {"H_half", hr_norm(states[k], 0.5, params)}});
  }
  return j.dump(2);
}

SpectralVector step_exp_euler(const SpectralVector& state, const SpectralVector& o_now,
                              const SpectralVector& o_next, double dt, const ModelParams& params) {
  if (!(dt > 0.0)) throw InvalidArgument("step_exp_euler: dt must be positive");
  require_same_size(state, o_now, "step_exp_euler");
  require_same_size(state, o_next, "step_exp_euler");
  const SpectralVector f = projected_F(state, params);
  SpectralVector out(state.size());
  auto o = out.coeffs_mut();
  for (std::size_t n = 1; n <= state.size(); ++n) {
    const double decay = std::exp(eigenvalue(n, params) * dt);
    o[n - 1] = decay * (state[n - 1] - o_now[n - 1] + dt * f[n - 1]) + o_next[n - 1];
  }
  return out;
}

SpectralVector step_ode_euler(const SpectralVector& state, const SpectralVector& o_now,
                              const SpectralVector& o_next, double dt, const ModelParams& params) {
  if (!(dt > 0.0)) throw InvalidArgument("step_ode_euler: dt must be positive");
  require_same_size(state, o_now, "step_ode_euler");
  require_same_size(state, o_next, "step_ode_euler");
  const std::size_t N = state.size();
  if (N > 0 && dt * std::abs(eigenvalue(N, params)) > 1.0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "step_ode_euler: unstable step, dt*|mu_N| = %.6g > 1 (N = %zu, dt = %.6g)",
                  dt * std::abs(eigenvalue(N, params)), N, dt);
    throw InvalidArgument(msg);
  }
  // F is evaluated at Y + O_now = state.
  const SpectralVector f = projected_F(state, params);
  SpectralVector out(N);
  auto o = out.coeffs_mut();
  for (std::size_t n = 1; n <= N; ++n) {
    const double y = state[n - 1] - o_now[n - 1];
    o[n - 1] = y + dt * (eigenvalue(n, params) * y + f[n - 1]) + o_next[n - 1];
  }
  return out;
}

NoisePathSet zero_noise(const SolverConfig& config) {
  return NoisePathSet(uniform_grid(config.params.T, config.K), 0, config.N);
}

Trajectory solve(const SolverConfig& config, const NoisePathSet& noise) {
  config.validate();
  const std::size_t N = config.N;
  const std::size_t K = config.K;
  const std::vector<double> grid = uniform_grid(config.params.T, K);
  if (noise.times() != grid) {
    throw InvalidArgument("solve: noise grid does not match the solver grid");
  }
  if (noise.modes() < N) throw InvalidArgument("solve: noise has fewer modes than N");
  const double dt = config.dt();
  if (config.integrator == Integrator::ode_euler && dt * std::abs(eigenvalue(N, config.params)) > 1.0) {
    throw InvalidArgument("solve: ode_euler requires dt*|mu_N| <= 1; increase K or lower N");
  }

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(K + 1);
  traj.config_hash = config.hash();
  traj.noise_seed = noise.seed();
  traj.noise_checksum = noise.checksum(N);

  // X_0 = P xi + O_0; O_0 = 0 for a convolution sampled from zero.
  SpectralVector x = config.xi.resized(N) + noise.state(0, N);
  guard(x, 0);
  traj.states.push_back(x);
  SpectralVector o_now = noise.state(0, N);
  for (std::size_t k = 0; k < K; ++k) {
    SpectralVector o_next = noise.state(k + 1, N);
    x = config.integrator == Integrator::exp_euler
            ? step_exp_euler(x, o_now, o_next, dt, config.params)
            : step_ode_euler(x, o_now, o_next, dt, config.params);
    guard(x, k + 1);
    traj.states.push_back(x);
    o_now = std::move(o_next);
  }
  return traj;
}

}  // namespace sburgers
