#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sburgers/harness.hpp"
#include "support.hpp"

using namespace sburgers;
using testing_support::Gen;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sburgers_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

RunConfig small_galerkin() {
  RunConfig c = RunConfig::defaults_for("rates-galerkin");
  c.noise_modes = 64;
  c.n_ref = 64;
  c.ladder = {2, 4, 8, 16};
  c.K = 256;
  c.paths = 6;
  return c;
}

}  // namespace

TEST_CASE("slope fit on exact power laws") {
  const std::vector<double> n = {8, 16, 32, 64, 128};
  std::vector<double> e;
  for (double x : n) e.push_back(5.0 * std::pow(x, -2.0));
  const SlopeFit f = fit_slope(n, e);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(f.stderr_ == doctest::Approx(0.0).scale(1.0));
  CHECK(f.intercept == doctest::Approx(std::log2(5.0)).epsilon(1e-13));

  const std::vector<double> flat(5, 0.3);
  CHECK(fit_slope(n, flat).slope == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("slope fit recovers a noisy power law") {
  Gen g(51);
  const std::vector<double> n = {16, 32, 64, 128, 256, 512};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> e;
    for (double x : n) e.push_back(3.0 * std::pow(x, -1.4) * std::exp(0.02 * g.normal()));
    const SlopeFit f = fit_slope(n, e);
    CHECK(f.slope >= 1.35);
    CHECK(f.slope <= 1.45);
  }
}

TEST_CASE("slope fit rejects bad input") {
  const std::vector<double> n3 = {1, 2, 3};
  CHECK_THROWS_AS(fit_slope(n3, n3), InvalidArgument);
  const std::vector<double> n = {1, 2, 4, 8};
  const std::vector<double> with_zero = {1, 0.5, 0.0, 0.1};
  CHECK_THROWS_AS(fit_slope(n, with_zero), InvalidArgument);
  const std::vector<double> same = {2, 2, 2, 2};
  CHECK_THROWS_AS(fit_slope(same, n), InvalidArgument);
}

TEST_CASE("thresholds") {
  ModelParams p;  // beta 0.5, gamma 0.3, eps 0.5
  CHECK(noise_tail_threshold(p) == doctest::Approx(1.4));
  CHECK(galerkin_nu(p) == doctest::Approx((2.0 - 1.2) / 3.0));
  CHECK(galerkin_threshold(p) == doctest::Approx(2.0 * (1.0 - 0.3 - 0.8 / 3.0)));
  CHECK(galerkin_threshold(p) == doctest::Approx(0.866667).epsilon(1e-5));
  p.gamma = p.beta;
  CHECK(noise_tail_threshold(p) == 1.0);
  p.eps = 0.1;
  CHECK(galerkin_threshold(p) == doctest::Approx(0.2));
}

TEST_CASE("config JSON round-trip") {
  for (const char* name : {"simulate", "rates-noise", "rates-galerkin", "moments", "check-bounds"}) {
    RunConfig c = RunConfig::defaults_for(name);
    c.seed = 123456789012345ull;
    c.params.c1 = -0.1;
    c.xi = {0.1, 1.0 / 3.0};
    const RunConfig back = RunConfig::from_json(c.to_json());
    CAPTURE(name);
    CHECK(back == c);
    CHECK(back.to_json() == c.to_json());
    CHECK_NOTHROW(c.validate());
  }
  const RunConfig partial = RunConfig::from_json(R"({"experiment": "moments", "paths": 7})");
  RunConfig expected = RunConfig::defaults_for("moments");
  expected.paths = 7;
  CHECK(partial == expected);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(RunConfig::from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"bogus": 1})"), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"params": {"c0": "x"}})"), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"experiment": "nope"})"), InvalidArgument);

  RunConfig m = RunConfig::defaults_for("moments");
  m.moment_p = 4.0;  // p alpha = 0.8
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m.moment_p = 5.0;  // p alpha = 1 is still excluded
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m.moment_p = 6.0;
  CHECK_NOTHROW(m.validate());

  RunConfig r = RunConfig::defaults_for("rates-noise");
  r.ladder = {16, 32, 64};
  CHECK_THROWS_AS(r.validate(), InvalidArgument);
  r.ladder = {16, 32, 32, 64};
  CHECK_THROWS_AS(r.validate(), InvalidArgument);
  r.ladder = {16, 32, 64, 2048};
  CHECK_THROWS_AS(r.validate(), InvalidArgument);

  RunConfig g = RunConfig::defaults_for("rates-galerkin");
  g.n_ref = 128;  // < 4 x 64
  CHECK_THROWS_AS(g.validate(), InvalidArgument);
  g.n_ref = 1024;  // > noise modes
  CHECK_THROWS_AS(g.validate(), InvalidArgument);

  RunConfig s = RunConfig::defaults_for("simulate");
  s.integrator = Integrator::ode_euler;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s.K = 1u << 20;
  CHECK_NOTHROW(s.validate());
  s.params.c0 = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("noise tail rate on a small ladder") {
  RunConfig c = RunConfig::defaults_for("rates-noise");
  c.noise_modes = 512;
  c.ladder = {16, 32, 64, 128};
  c.paths = 32;
  const RateReport r = run_noise_tail_rate(c);
  REQUIRE(r.points.size() == 4);
  CHECK_FALSE(r.degenerate);
  CHECK(r.fit.slope > 1.0);
  CHECK(r.threshold == doctest::Approx(1.4));
  for (std::size_t i = 1; i < 4; ++i) CHECK(r.points[i].mean < r.points[i - 1].mean);
  CHECK(r.path_seeds.size() == 32);
  CHECK(r.per_path_slopes.size() == 32);
}

TEST_CASE("single-mode noise has a degenerate tail") {
  RunConfig c = RunConfig::defaults_for("rates-noise");
  c.noise_amplitudes.assign(300, 0.0);
  c.noise_amplitudes[0] = 1.0;
  c.paths = 3;
  c.ladder = {16, 32, 64, 128};
  const RateReport r = run_noise_tail_rate(c);
  CHECK(r.degenerate);
  CHECK_FALSE(r.pass);
  CHECK(std::isnan(r.fit.slope));
  const auto j = nlohmann::json::parse(rate_report_json(r));
  CHECK(j["slope"].is_null());
  CHECK(j["degenerate"] == true);
}

TEST_CASE("galerkin rate on a small ladder") {
  const RunConfig c = small_galerkin();
  const RateReport r = run_galerkin_rate(c);
  REQUIRE(r.points.size() == 4);
  CHECK_FALSE(r.degenerate);
  CHECK(r.fit.slope > 0.5);
  CHECK(r.threshold == doctest::Approx(galerkin_threshold(c.params)));
}

TEST_CASE("galerkin errors vanish in the linear deterministic case at the reference level") {
  RunConfig c = small_galerkin();
  c.ladder = {4, 8, 16, 64};
  c.n_ref = 256;
  c.noise_modes = 256;
  c.noise_scale = 0.0;
  c.params.c1 = 0.0;
  c.xi = {1.0, 0.5};
  c.paths = 1;
  const RateReport r = run_galerkin_rate(c);
  // xi lives in the first two modes, the linear flow keeps it there.
  for (const auto& pt : r.points) CHECK(pt.mean == 0.0);
  CHECK(r.degenerate);
}

TEST_CASE("moment estimate is stable under doubling the path count") {
  RunConfig c = RunConfig::defaults_for("moments");
  c.K = 128;
  c.paths = 200;
  const MomentRun a = run_moment_check(c);
  c.paths = 400;
  const MomentRun b = run_moment_check(c);
  CHECK(a.report.pass());
  CHECK(b.report.pass());
  // the first 200 paths coincide
  for (std::size_t i = 0; i < 200; ++i) CHECK(a.sup_norms[i] == b.sup_norms[i]);
  const double ratio = a.report.lhs / b.report.lhs;
  CHECK(ratio > 0.8);
  CHECK(ratio < 1.25);
}

TEST_CASE("outputs are byte-identical across thread counts and reruns") {
  RunConfig c = small_galerkin();
  const auto d1 = scratch("t1");
  const auto d2 = scratch("t2");
  c.out_dir = d1.string();
  write_rate_outputs(c, run_galerkin_rate(c, 1));
  c.out_dir = d2.string();
  write_rate_outputs(c, run_galerkin_rate(c, 3));
  CHECK(slurp(d1 / "rates-galerkin.csv") == slurp(d2 / "rates-galerkin.csv"));
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));

  RunConfig again = RunConfig::from_json(slurp(d1 / "config.json"));
  const auto d3 = scratch("t3");
  again.out_dir = d3.string();
  write_rate_outputs(again, run_galerkin_rate(again, 2));
  CHECK(slurp(d1 / "rates-galerkin.csv") == slurp(d3 / "rates-galerkin.csv"));
  CHECK(slurp(d1 / "report.json") == slurp(d3 / "report.json"));
  for (const auto& d : {d1, d2, d3}) std::filesystem::remove_all(d);
}

TEST_CASE("bound, moment and simulate writers") {
  const auto dir = scratch("writers");
  RunConfig b = RunConfig::defaults_for("check-bounds");
  b.N = 8;
  b.K = 64;
  b.noise_modes = 16;
  b.paths = 3;
  b.out_dir = dir.string();
  const auto paths = run_bound_checks(b, 2);
  REQUIRE(paths.size() == 3);
  for (const auto& pb : paths) {
    CHECK(pb.reports.size() == 3);
    for (const auto& r : pb.reports) CHECK(r.pass);
  }
  write_bound_outputs(b, paths);
  const std::string csv = slurp(dir / "check-bounds.csv");
  CHECK(csv.rfind("experiment,N,path_seed,error,bound,lhs,rhs,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 9);
  CHECK(nlohmann::json::parse(slurp(dir / "bounds.json")).size() == 3);

  RunConfig m = RunConfig::defaults_for("moments");
  m.K = 32;
  m.paths = 5;
  m.out_dir = dir.string();
  write_moment_outputs(m, run_moment_check(m));
  const auto mj = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(mj["paths"] == 5);
  CHECK(mj["rhs_source"] == "closed-form");

  RunConfig s = RunConfig::defaults_for("simulate");
  s.N = 4;
  s.K = 8;
  s.noise_modes = 8;
  s.out_dir = dir.string();
  const SimulateRun run = run_simulate(s);
  CHECK(run.path_seed == s.path_seed(0));
  write_simulate_outputs(s, run);
  CHECK(RunConfig::from_json(slurp(dir / "config.json")) == s);
  CHECK(std::filesystem::exists(dir / "trajectory.csv"));
  CHECK(std::filesystem::exists(dir / "norms.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("path seeds are distinct") {
  const RunConfig c = RunConfig::defaults_for("moments");
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 10000; ++i) seeds.push_back(c.path_seed(i));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("self-test passes and catches a perturbed constant") {
  std::ostringstream log;
  CHECK(run_selftest(log));
  CHECK(log.str().find("[FAIL]") == std::string::npos);
  std::ostringstream bad;
  CHECK_FALSE(run_selftest(bad, 1.01));
  CHECK(bad.str().find("[FAIL] growth constant (iii) value") != std::string::npos);
}
