#include "sburgers/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "sburgers/nonlinearity.hpp"
#include "sburgers/parallel.hpp"
#include "sburgers/philox.hpp"

namespace sburgers {

using nlohmann::json;

namespace {

const char* const kExperiments[] = {"simulate", "rates-noise", "rates-galerkin", "moments", "check-bounds"};

bool known_experiment(const std::string& name) {
  return std::find(std::begin(kExperiments), std::end(kExperiments), name) != std::end(kExperiments);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double mean_of(std::span<const double> v) { return pairwise_sum(v) / static_cast<double>(v.size()); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::ofstream open_out(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.out_dir);
  std::ofstream os(std::filesystem::path(config.out_dir) / name, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + config.out_dir + "/" + name);
  return os;
}

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }) ==
        allowed.end()) {
      throw InvalidArgument("config: unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace

RunConfig RunConfig::defaults_for(const std::string& experiment) {
  if (!known_experiment(experiment)) throw InvalidArgument("config: unknown experiment '" + experiment + "'");
  RunConfig c;
  c.experiment = experiment;
  if (experiment == "simulate") {
    c.paths = 1;
  } else if (experiment == "rates-noise") {
    c.noise_modes = 2048;
    c.K = 64;
    c.ladder = {16, 32, 64, 128, 256};
    c.paths = 512;
  } else if (experiment == "rates-galerkin") {
    c.noise_modes = 512;
    c.n_ref = 512;
    c.K = 4096;
    c.ladder = {8, 16, 32, 64};
    c.paths = 64;
  } else if (experiment == "moments") {
    c.noise_modes = 64;
    c.moment_n_keep = 64;
    c.K = 1024;
    c.paths = 1000;
  }
  return c;
}

void RunConfig::validate() const {
  if (!known_experiment(experiment)) throw InvalidArgument("config: unknown experiment '" + experiment + "'");
  params.validate();
  if (K == 0) throw InvalidArgument("config: K must be >= 1");
  if (paths == 0) throw InvalidArgument("config: paths must be >= 1");
  if (noise_amplitudes.empty() && noise_modes == 0) throw InvalidArgument("config: noise needs >= 1 mode");
  noise_spec().validate(params);
  if (xi.empty()) throw InvalidArgument("config: xi needs at least one coefficient");
  for (double x : xi) {
    if (!std::isfinite(x)) throw InvalidArgument("config: xi must be finite");
  }
  if (!(tolerance >= 0.0)) throw InvalidArgument("config: tolerance must be >= 0");
  const std::size_t M = noise_spec().modes();

  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) throw InvalidArgument("config: ladder must be strictly increasing");
  }
  if (!ladder.empty() && ladder.front() == 0) throw InvalidArgument("config: ladder entries must be >= 1");

  if (experiment == "rates-noise" || experiment == "rates-galerkin") {
    if (ladder.size() < 4) throw InvalidArgument("config: ladder needs at least 4 resolutions");
  }
  if (experiment == "rates-noise" && ladder.back() >= M) {
    throw InvalidArgument("config: largest ladder entry must be below the noise resolution");
  }
  if (experiment == "rates-galerkin") {
    if (n_ref <= ladder.back()) throw InvalidArgument("config: reference must be strictly finer than the ladder");
    if (n_ref < 4 * ladder.back()) throw InvalidArgument("config: reference needs n_ref >= 4 x largest ladder entry");
    if (n_ref > M) throw InvalidArgument("config: n_ref exceeds the noise resolution");
  }
  if (experiment == "simulate" || experiment == "check-bounds") {
    if (N == 0) throw InvalidArgument("config: N must be >= 1");
    if (N > M) throw InvalidArgument("config: N exceeds the noise resolution");
  }
  if (experiment == "moments") {
    if (moment_n_keep == 0 || moment_n_keep > M) throw InvalidArgument("config: moment n_keep must be in [1, noise modes]");
    const double alpha_max = 0.5 - std::max(0.0, params.gamma - params.beta);
    if (!(moment_alpha > 0.0 && moment_alpha < alpha_max)) {
      throw InvalidArgument("config: moment alpha must lie in (0, 1/2 - max(0, gamma - beta))");
    }
    if (!(moment_p * moment_alpha > 1.0)) throw InvalidArgument("config: moment exponent needs p > 1/alpha");
  }
  if (integrator == Integrator::ode_euler) {
    const std::size_t top = experiment == "rates-galerkin" ? n_ref : N;
    if (params.T / static_cast<double>(K) * std::abs(eigenvalue(top, params)) > 1.0) {
      throw InvalidArgument("config: ode_euler needs dt*|mu_N| <= 1");
    }
  }
}

std::string RunConfig::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["params"] = {{"c0", params.c0},     {"c1", params.c1},       {"T", params.T},
                 {"beta", params.beta}, {"gamma", params.gamma}, {"eps", params.eps}};
  j["noise"] = {{"delta", noise_delta}, {"scale", noise_scale}, {"modes", noise_modes},
                {"amplitudes", noise_amplitudes}};
  j["solver"] = {{"N", N}, {"K", K}, {"integrator", to_string(integrator)}, {"xi", xi}};
  j["ladder"] = ladder;
  j["n_ref"] = n_ref;
  j["paths"] = paths;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["moment"] = {{"alpha", moment_alpha}, {"p", moment_p}, {"n_keep", moment_n_keep}};
  j["tolerance"] = tolerance;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  try {
    reject_unknown(j, {"experiment", "params", "noise", "solver", "ladder", "n_ref", "paths", "seed", "out_dir",
                       "moment", "tolerance"},
                   "top level");
    RunConfig c = defaults_for(j.value("experiment", std::string("simulate")));
    if (j.contains("params")) {
      const json& p = j.at("params");
      reject_unknown(p, {"c0", "c1", "T", "beta", "gamma", "eps"}, "params");
      read_key(p, "c0", c.params.c0);
      read_key(p, "c1", c.params.c1);
      read_key(p, "T", c.params.T);
      read_key(p, "beta", c.params.beta);
      read_key(p, "gamma", c.params.gamma);
      read_key(p, "eps", c.params.eps);
    }
    if (j.contains("noise")) {
      const json& n = j.at("noise");
      reject_unknown(n, {"delta", "scale", "modes", "amplitudes"}, "noise");
      read_key(n, "delta", c.noise_delta);
      read_key(n, "scale", c.noise_scale);
      read_key(n, "modes", c.noise_modes);
      read_key(n, "amplitudes", c.noise_amplitudes);
    }
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      reject_unknown(s, {"N", "K", "integrator", "xi"}, "solver");
      read_key(s, "N", c.N);
      read_key(s, "K", c.K);
      if (s.contains("integrator")) c.integrator = integrator_from_string(s.at("integrator").get<std::string>());
      read_key(s, "xi", c.xi);
    }
    read_key(j, "ladder", c.ladder);
    read_key(j, "n_ref", c.n_ref);
    read_key(j, "paths", c.paths);
    read_key(j, "seed", c.seed);
    read_key(j, "out_dir", c.out_dir);
    if (j.contains("moment")) {
      const json& m = j.at("moment");
      reject_unknown(m, {"alpha", "p", "n_keep"}, "moment");
      read_key(m, "alpha", c.moment_alpha);
      read_key(m, "p", c.moment_p);
      read_key(m, "n_keep", c.moment_n_keep);
    }
    read_key(j, "tolerance", c.tolerance);
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

NoiseSpec RunConfig::noise_spec() const {
  if (!noise_amplitudes.empty()) return NoiseSpec::from_amplitudes(params.beta, noise_amplitudes);
  return NoiseSpec::power_law(params.beta, noise_delta, noise_modes, params, noise_scale);
}

SolverConfig RunConfig::solver_config(std::size_t modes) const {
  SolverConfig s;
  s.N = modes;
  s.K = K;
  s.integrator = integrator;
  s.xi = SpectralVector(xi);
  s.params = params;
  s.spec = noise_spec();
  return s;
}

std::uint64_t RunConfig::path_seed(std::size_t index) const { return mix_seed(seed ^ index); }

bool operator==(const RunConfig& a, const RunConfig& b) {
  auto p = [](const ModelParams& m) { return std::tie(m.c0, m.c1, m.T, m.beta, m.gamma, m.eps); };
  return a.experiment == b.experiment && p(a.params) == p(b.params) && a.noise_delta == b.noise_delta &&
         a.noise_scale == b.noise_scale && a.noise_modes == b.noise_modes &&
         a.noise_amplitudes == b.noise_amplitudes && a.N == b.N && a.K == b.K && a.integrator == b.integrator &&
         a.xi == b.xi && a.ladder == b.ladder && a.n_ref == b.n_ref && a.paths == b.paths && a.seed == b.seed &&
         a.out_dir == b.out_dir && a.moment_alpha == b.moment_alpha && a.moment_p == b.moment_p &&
         a.moment_n_keep == b.moment_n_keep && a.tolerance == b.tolerance;
}

SlopeFit fit_slope(std::span<const double> n, std::span<const double> error) {
  if (n.size() != error.size()) throw InvalidArgument("fit_slope: size mismatch");
  if (n.size() < 4) throw InvalidArgument("fit_slope: need at least 4 points");
  const std::size_t m = n.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(n[i] > 0.0)) throw InvalidArgument("fit_slope: resolutions must be positive");
    if (!(error[i] > 0.0) || !std::isfinite(error[i])) throw InvalidArgument("fit_slope: errors must be positive");
    x[i] = std::log2(n[i]);
    y[i] = std::log2(error[i]);
  }
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit_slope: resolutions must not all coincide");
  const double b = sxy / sxx;
  const double a = ym - b * xm;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - a - b * x[i];
    rss += r * r;
  }
  const double se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return {-b, se, a};
}

double noise_tail_threshold(const ModelParams& params) { return 1.0 + 2.0 * (params.beta - params.gamma); }

double galerkin_nu(const ModelParams& params) { return (2.0 - 4.0 * std::min(params.gamma, 0.5)) / 3.0; }

double galerkin_threshold(const ModelParams& params) {
  return std::min({2.0 * params.eps, noise_tail_threshold(params), 2.0 * (1.0 - params.gamma - galerkin_nu(params))});
}

namespace {

// Aggregates per-path errors (path-major) into a report.
void finish_rate(RateReport& report, const std::vector<std::size_t>& ladder,
                 const std::vector<std::vector<double>>& per_path) {
  const std::size_t P = per_path.size();
  std::vector<double> ns(ladder.begin(), ladder.end());
  std::vector<double> means;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    RatePoint pt;
    pt.N = ladder[i];
    pt.per_path.resize(P);
    for (std::size_t p = 0; p < P; ++p) pt.per_path[p] = per_path[p][i];
    pt.mean = mean_of(pt.per_path);
    pt.median = median_of(pt.per_path);
    means.push_back(pt.mean);
    report.points.push_back(std::move(pt));
  }
  report.degenerate = std::any_of(means.begin(), means.end(), [](double e) { return !(e > 0.0); });
  report.per_path_slopes.assign(P, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t p = 0; p < P; ++p) {
    if (std::all_of(per_path[p].begin(), per_path[p].end(), [](double e) { return e > 0.0; })) {
      report.per_path_slopes[p] = fit_slope(ns, per_path[p]).slope;
    }
  }
  if (report.degenerate) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.fit = {nan, nan, nan};
    report.pass = false;
    return;
  }
  report.fit = fit_slope(ns, means);
  report.pass = report.fit.slope >= report.threshold - report.tolerance;
}

}  // namespace

RateReport run_noise_tail_rate(const RunConfig& config, unsigned threads) {
  config.validate();
  if (config.ladder.size() < 4) throw InvalidArgument("run_noise_tail_rate: ladder needs at least 4 resolutions");
  const NoiseSpec spec = config.noise_spec();
  if (config.ladder.back() >= spec.modes()) {
    throw InvalidArgument("run_noise_tail_rate: ladder exceeds the noise resolution");
  }
  const std::vector<double> grid = uniform_grid(config.params.T, config.K);

  RateReport report;
  report.experiment = "rates-noise";
  report.threshold = noise_tail_threshold(config.params);
  report.threshold_formula = "1 + 2(beta - gamma)";
  report.tolerance = config.tolerance;
  report.path_seeds.resize(config.paths);
  for (std::size_t p = 0; p < config.paths; ++p) report.path_seeds[p] = config.path_seed(p);

  std::vector<std::vector<double>> per_path(config.paths);
  parallel_for(config.paths, threads, [&](std::size_t p) {
    const NoisePathSet noise = sample_convolution(spec, grid, report.path_seeds[p], config.params);
    std::vector<double> errs;
    for (std::size_t n : config.ladder) errs.push_back(tail_sup_norm(noise, n, config.params.gamma, config.params));
    per_path[p] = std::move(errs);
  });
  finish_rate(report, config.ladder, per_path);
  return report;
}

RateReport run_galerkin_rate(const RunConfig& config, unsigned threads) {
  config.validate();
  const std::size_t n_ref = config.n_ref;
  if (config.ladder.empty() || n_ref <= config.ladder.back()) {
    throw InvalidArgument("run_galerkin_rate: reference not strictly finer than ladder");
  }
  const NoiseSpec spec = config.noise_spec();
  const std::vector<double> grid = uniform_grid(config.params.T, config.K);
  const double gamma = config.params.gamma;

  RateReport report;
  report.experiment = "rates-galerkin";
  report.threshold = galerkin_threshold(config.params);
  report.threshold_formula = "min{2 eps, 1 + 2(beta - gamma), 2(1 - gamma - nu)}, nu = (2 - 4 min{gamma, 1/2})/3";
  report.tolerance = config.tolerance;
  report.path_seeds.resize(config.paths);
  for (std::size_t p = 0; p < config.paths; ++p) report.path_seeds[p] = config.path_seed(p);

  std::vector<std::vector<double>> per_path(config.paths);
  parallel_for(config.paths, threads, [&](std::size_t p) {
    const std::uint64_t seed = report.path_seeds[p];
    const NoisePathSet noise = sample_convolution(spec, grid, seed, config.params, n_ref);
    const Trajectory ref = solve(config.solver_config(n_ref), noise);
    std::vector<double> errs;
    for (std::size_t N : config.ladder) {
      const NoisePathSet native = sample_convolution(spec, grid, seed, config.params, N);
      const Trajectory coarse = solve(config.solver_config(N), noise);
      if (native.checksum(N) != noise.checksum(N) || coarse.noise_checksum != native.checksum(N)) {
        throw std::runtime_error("run_galerkin_rate: noise coupling broken at N = " + std::to_string(N));
      }
      double sup = 0.0;
      for (std::size_t k = 0; k < ref.states.size(); ++k) {
        sup = std::max(sup, hr_norm(ref.states[k] - coarse.states[k], gamma, config.params));
      }
      errs.push_back(sup);
    }
    per_path[p] = std::move(errs);
  });
  finish_rate(report, config.ladder, per_path);
  return report;
}

MomentRun run_moment_check(const RunConfig& config, unsigned threads) {
  config.validate();
  const NoiseSpec spec = config.noise_spec();
  const std::vector<double> grid = uniform_grid(config.params.T, config.K);
  MomentRun run;
  run.path_seeds.resize(config.paths);
  for (std::size_t p = 0; p < config.paths; ++p) run.path_seeds[p] = config.path_seed(p);
  run.sup_norms = sampled_sup_norms(spec, grid, run.path_seeds, config.moment_n_keep, config.params.gamma,
                                    config.params, threads);
  run.report = moment_bound_check(run.sup_norms, spec, config.moment_n_keep, config.moment_alpha,
                                  config.params.gamma, config.moment_p, config.params);
  return run;
}

std::vector<PathBounds> run_bound_checks(const RunConfig& config, unsigned threads) {
  config.validate();
  const NoiseSpec spec = config.noise_spec();
  const std::vector<double> grid = uniform_grid(config.params.T, config.K);
  const SolverConfig solver = config.solver_config(config.N);
  std::vector<PathBounds> out(config.paths);
  parallel_for(config.paths, threads, [&](std::size_t p) {
    const std::uint64_t seed = config.path_seed(p);
    const NoisePathSet noise = sample_convolution(spec, grid, seed, config.params);
    const Trajectory traj = solve(solver, noise);
    out[p].path_seed = seed;
    out[p].reports = {gronwall_bound(traj, noise, solver), bootstrap_rho_bound(traj, noise, solver),
                      bootstrap_top_bound(traj, noise, solver)};
  });
  return out;
}

SimulateRun run_simulate(const RunConfig& config) {
  config.validate();
  const NoiseSpec spec = config.noise_spec();
  const std::vector<double> grid = uniform_grid(config.params.T, config.K);
  const std::uint64_t seed = config.path_seed(0);
  const NoisePathSet noise = sample_convolution(spec, grid, seed, config.params);
  return {seed, solve(config.solver_config(config.N), noise)};
}

std::string rate_report_json(const RateReport& report) {
  json j;
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  j["experiment"] = report.experiment;
  j["threshold"] = report.threshold;
  j["threshold_formula"] = report.threshold_formula;
  j["threshold_source"] = "closed-form";
  j["tolerance"] = report.tolerance;
  j["degenerate"] = report.degenerate;
  j["slope"] = num(report.fit.slope);
  j["slope_stderr"] = num(report.fit.stderr_);
  j["intercept_log2"] = num(report.fit.intercept);
  j["pass"] = report.pass;
  json pts = json::array();
  for (const auto& pt : report.points) pts.push_back({{"N", pt.N}, {"mean", pt.mean}, {"median", pt.median}});
  j["points"] = pts;
  json slopes = json::array();
  for (double s : report.per_path_slopes) slopes.push_back(num(s));
  j["per_path_slopes"] = slopes;
  return j.dump(2) + "\n";
}

void write_config(const RunConfig& config) { open_out(config, "config.json") << config.to_json(); }

void write_rate_outputs(const RunConfig& config, const RateReport& report) {
  write_config(config);
  auto csv = open_out(config, report.experiment + ".csv");
  csv << "experiment,N,path_seed,error\n";
  for (const auto& pt : report.points) {
    for (std::size_t p = 0; p < pt.per_path.size(); ++p) {
      csv << report.experiment << ',' << pt.N << ',' << report.path_seeds[p] << ',' << fmt(pt.per_path[p]) << '\n';
    }
  }
  open_out(config, "report.json") << rate_report_json(report);
}

void write_moment_outputs(const RunConfig& config, const MomentRun& run) {
  write_config(config);
  auto csv = open_out(config, "moments.csv");
  csv << "experiment,N,path_seed,error\n";
  for (std::size_t p = 0; p < run.sup_norms.size(); ++p) {
    csv << "moments," << run.report.n_keep << ',' << run.path_seeds[p] << ',' << fmt(run.sup_norms[p]) << '\n';
  }
  const MomentReport& r = run.report;
  json j = {{"experiment", "moments"}, {"paths", r.paths}, {"n_keep", r.n_keep}, {"alpha", r.alpha},
            {"gamma", r.gamma},         {"p", r.p},         {"lhs", r.lhs},        {"rhs", r.rhs},
            {"ratio", r.ratio()},       {"pass", r.pass()}, {"rhs_source", "closed-form"}};
  open_out(config, "report.json") << j.dump(2) << '\n';
}

void write_bound_outputs(const RunConfig& config, const std::vector<PathBounds>& paths) {
  write_config(config);
  auto csv = open_out(config, "check-bounds.csv");
  csv << "experiment,N,path_seed,error,bound,lhs,rhs,pass\n";
  json all = json::array();
  for (const auto& pb : paths) {
    for (const auto& r : pb.reports) {
      csv << "check-bounds," << config.N << ',' << pb.path_seed << ',' << fmt(std::max(0.0, r.lhs - r.rhs)) << ','
          << r.name << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
    }
    all.push_back({{"path_seed", pb.path_seed}, {"reports", json::parse(reports_to_json(pb.reports))}});
  }
  open_out(config, "bounds.json") << all.dump(2) << '\n';
}

void write_simulate_outputs(const RunConfig& config, const SimulateRun& run) {
  write_config(config);
  auto csv = open_out(config, "trajectory.csv");
  run.trajectory.write_csv(csv);
  open_out(config, "norms.json") << run.trajectory.norm_summary_json(config.params) << '\n';
}

// ---------------------------------------------------------------------------
// Self-test

namespace {

class Checker {
 public:
  explicit Checker(std::ostream& log) : log_(log) {}
  void check(bool ok, const std::string& name, const std::string& detail = {}) {
    log_ << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) log_ << ": " << detail;
    log_ << '\n';
    all_ok_ = all_ok_ && ok;
  }
  [[nodiscard]] bool ok() const { return all_ok_; }

 private:
  std::ostream& log_;
  bool all_ok_ = true;
};

SpectralVector canned_vector(std::uint64_t seed, std::size_t index, std::size_t modes, double scale) {
  SpectralVector v(modes);
  for (std::size_t n = 1; n <= modes; ++n) {
    v[n - 1] = scale * indexed_normal(seed, index, n) / static_cast<double>(n);
  }
  return v;
}

}  // namespace

bool run_selftest(std::ostream& log, double growth_perturbation) {
  Checker c(log);
  ModelParams params;
  const std::uint64_t seed = 0x5e1f7e57;

  {
    constexpr PhiloxCounter kZero = {0, 0, 0, 0};
    const PhiloxCounter r = philox4x32_10(kZero, {0, 0});
    c.check(r == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}, "philox known answer");
  }
  {
    const BasisConstants b = basis_constants(0.5, params);
    c.check(std::abs(b.eig_sum - 1.0 / 6.0) <= 1e-12, "eigenvalue sum at rho = 1/2", fmt(b.eig_sum));
  }
  {
    const double K = growth_constant(0.0, GrowthItem::item_iii, params).K * growth_perturbation;
    c.check(std::abs(K - 1.0 / std::sqrt(3.0)) <= 1e-14, "growth constant (iii) value", fmt(K));
    bool ok = true;
    for (std::size_t i = 0; i < 200 && ok; ++i) {
      const SpectralVector v = canned_vector(seed, i, 1 + i % 40, 1.0 + static_cast<double>(i % 7));
      const double h = hr_norm(v, 0.5, params);
      ok = hr_norm(eval_F_direct(v, params), 0.0, params) <= K * h * h * (1.0 + 1e-12);
    }
    c.check(ok, "growth inequality (iii) on canned samples");
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < 200 && ok; ++i) {
      const SpectralVector v = canned_vector(seed + 1, i, 1 + i % 128, 3.0);
      const double h = hr_norm(v, 0.0, params);
      ok = std::abs(energy_pairing(v, params)) <= 1e-10 * (1.0 + h * h * h);
    }
    c.check(ok, "energy identity <v, F(v)> = 0");
  }
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      const SpectralVector v = canned_vector(seed + 2, i, 1 + 5 * i, 2.0);
      const SpectralVector d = eval_F_direct(v, params);
      const double rel = hr_norm(eval_F_fast(v, params) - d, 0.0, params) / std::max(1e-300, hr_norm(d, 0.0, params));
      worst = std::max(worst, rel);
    }
    c.check(worst <= 1e-10, "fast and direct nonlinearity agree", fmt(worst));
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < 100 && ok; ++i) {
      const SpectralVector v = canned_vector(seed + 3, i, 1 + i % 30, 2.0);
      const SpectralVector w = canned_vector(seed + 4, i, 1 + (i * 7) % 30, 2.0);
      ok = lipschitz_check(v, w, params).pass && coercivity_check(v, w, 0.5, params).pass &&
           derivative_remainder_check(v, w, params).pass;
    }
    c.check(ok, "Lipschitz, coercivity and remainder inequalities");
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < 100 && ok; ++i) {
      const SpectralVector v = canned_vector(seed + 5, i, 32, 1.0);
      const double r = -0.5 + 0.02 * static_cast<double>(i);
      const double t = 1e-3 * static_cast<double>(i);
      ok = hr_norm(apply_semigroup(t, v, params), r, params) <= hr_norm(v, r, params) &&
           hr_norm(project(v, i % 32), r, params) <= hr_norm(v, r, params);
    }
    c.check(ok, "semigroup and projection contractions");
  }
  {
    // Linear exactness: with c1 = 0, X_k - O_k = e^{t_k A}(xi - O_0).
    RunConfig rc = RunConfig::defaults_for("simulate");
    rc.params.c1 = 0.0;
    rc.N = 16;
    rc.K = 128;
    rc.noise_modes = 16;
    rc.xi = {1.0, -0.5, 0.25};
    const SolverConfig sc = rc.solver_config(rc.N);
    const NoisePathSet noise = sample_convolution(sc.spec, uniform_grid(rc.params.T, rc.K), seed, rc.params);
    const Trajectory traj = solve(sc, noise);
    double worst = 0.0;
    for (std::size_t k = 0; k <= rc.K; ++k) {
      const SpectralVector exact = apply_semigroup(traj.times[k], sc.xi.resized(rc.N), rc.params);
      const SpectralVector got = traj.states[k] - noise.state(k, rc.N);
      worst = std::max(worst, hr_norm(got - exact, 0.0, rc.params) / std::max(1e-300, hr_norm(exact, 0.0, rc.params)));
    }
    c.check(worst <= 1e-12, "linear exactness of the exponential step", fmt(worst));
  }
  {
    RunConfig rc = RunConfig::defaults_for("check-bounds");
    rc.N = 16;
    rc.K = 256;
    rc.noise_modes = 64;
    rc.paths = 10;
    rc.seed = seed;
    bool ok = true;
    std::string detail;
    for (const auto& pb : run_bound_checks(rc)) {
      for (const auto& r : pb.reports) {
        if (!r.pass) {
          ok = false;
          detail = r.name + " lhs " + fmt(r.lhs) + " rhs " + fmt(r.rhs);
        }
      }
    }
    c.check(ok, "a priori bounds on 10 canned paths", detail);
  }
  return c.ok();
}

}  // namespace sburgers
