// sburgers: command-line driver for simulations, rate experiments, moment and
// a priori bound checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sburgers/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadConfig = 2;

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::size_t paths = 0;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&flags](const std::uint64_t& s) { flags.seed = s, flags.seed_set = true; }, "root seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--paths", flags.paths, "number of Monte-Carlo paths");
  cmd->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
}

sburgers::RunConfig load_config(const std::string& experiment, const CommonFlags& flags) {
  sburgers::RunConfig config = sburgers::RunConfig::defaults_for(experiment);
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw sburgers::InvalidArgument("cannot read config file " + flags.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    config = sburgers::RunConfig::from_json(ss.str());
    if (config.experiment != experiment) {
      throw sburgers::InvalidArgument("config is for experiment '" + config.experiment + "', not '" + experiment + "'");
    }
  }
  if (flags.seed_set) config.seed = flags.seed;
  if (!flags.out.empty()) config.out_dir = flags.out;
  if (flags.paths != 0) config.paths = flags.paths;
  config.validate();
  return config;
}

void print_rate(const sburgers::RateReport& r) {
  for (const auto& pt : r.points) std::printf("N=%-6zu mean=%.6e median=%.6e\n", pt.N, pt.mean, pt.median);
  if (r.degenerate) {
    std::printf("degenerate: a mean error vanished, no slope fitted\n");
    return;
  }
  std::printf("slope=%.4f +- %.4f threshold=%.5f tolerance=%.2f -> %s\n", r.fit.slope, r.fit.stderr_, r.threshold,
              r.tolerance, r.pass ? "PASS" : "FAIL");
}

int run(const std::string& experiment, const CommonFlags& flags) {
  using namespace sburgers;
  const RunConfig config = load_config(experiment, flags);
  if (experiment == "simulate") {
    const SimulateRun run = run_simulate(config);
    write_simulate_outputs(config, run);
    std::printf("path_seed=%llu |X(T)|_H=%.6e\n", static_cast<unsigned long long>(run.path_seed),
                hr_norm(run.trajectory.states.back(), 0.0, config.params));
    return kExitPass;
  }
  if (experiment == "rates-noise" || experiment == "rates-galerkin") {
    const RateReport r = experiment == "rates-noise" ? run_noise_tail_rate(config, flags.threads)
                                                    : run_galerkin_rate(config, flags.threads);
    write_rate_outputs(config, r);
    print_rate(r);
    return r.pass ? kExitPass : kExitFail;
  }
  if (experiment == "moments") {
    const MomentRun m = run_moment_check(config, flags.threads);
    write_moment_outputs(config, m);
    std::printf("paths=%zu alpha=%.3f p=%.3f lhs=%.6e rhs=%.6e ratio=%.4e -> %s\n", m.report.paths, m.report.alpha,
                m.report.p, m.report.lhs, m.report.rhs, m.report.ratio(), m.report.pass() ? "PASS" : "FAIL");
    return m.report.pass() ? kExitPass : kExitFail;
  }
  const auto paths = run_bound_checks(config, flags.threads);
  write_bound_outputs(config, paths);
  std::size_t failures = 0;
  for (const auto& pb : paths) {
    for (const auto& r : pb.reports) failures += r.pass ? 0 : 1;
  }
  std::printf("paths=%zu bound violations=%zu -> %s\n", paths.size(), failures, failures ? "FAIL" : "PASS");
  return failures ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin solver and experiments for the stochastic Burgers equation"};
  app.require_subcommand(1);
  CommonFlags flags;
  const char* const experiments[][2] = {
      {"simulate", "integrate one path and write trajectory CSV and norm summary"},
      {"rates-noise", "noise tail decay rate experiment"},
      {"rates-galerkin", "Galerkin convergence rate experiment"},
      {"moments", "sup-in-time moment bound of the projected noise"},
      {"check-bounds", "a priori bound checks on simulated paths"},
  };
  for (const auto& e : experiments) add_common(app.add_subcommand(e[0], e[1]), flags);
  app.add_subcommand("selftest", "deterministic invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "selftest") return sburgers::run_selftest(std::cout) ? kExitPass : kExitFail;
    return run(name, flags);
  } catch (const sburgers::InvalidArgument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
}
