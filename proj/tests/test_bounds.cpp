#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "sburgers/bounds.hpp"
#include "sburgers/nonlinearity.hpp"
#include "support.hpp"

using namespace sburgers;
using testing_support::Gen;
using testing_support::kPi;

namespace {

struct Run {
  SolverConfig config;
  NoisePathSet noise;
  Trajectory traj;
};

Run noisy_run(std::size_t N, std::size_t M, std::uint64_t seed, SpectralVector xi = SpectralVector{1.0}) {
  SolverConfig c;
  c.N = N;
  c.K = 512;
  c.xi = std::move(xi);
  c.spec = NoiseSpec::power_law(0.5, 0.05, M, c.params);
  NoisePathSet noise = sample_convolution(c.spec, uniform_grid(c.params.T, c.K), seed, c.params);
  Trajectory t = solve(c, noise);
  return {c, std::move(noise), std::move(t)};
}

}  // namespace

TEST_CASE("within_bound tolerance") {
  CHECK(within_bound(1.0, 1.0));
  CHECK(within_bound(1.0 + 5e-10, 1.0));
  CHECK_FALSE(within_bound(1.0 + 2e-9, 1.0));
  CHECK(within_bound(1e6 + 1e-4, 1e6));
  CHECK_FALSE(within_bound(1e6 + 1e-2, 1e6));
}

TEST_CASE("gronwall right-hand side against hand-computed constants") {
  ModelParams p;  // c0 = c1 = 1, T = 1
  const double B = 1.0 / std::sqrt(3.0) + 1.0 / (std::sqrt(3.0) * kPi);
  const double C = 3.0 / 8.0 * B * B;
  CHECK(gronwall_rhs(0.0, 0.0, 0.0, p) == doctest::Approx(std::sqrt(C) * std::exp(C / 2.0)).epsilon(1e-14));
  const double S = 0.7;
  const double g = C * (1.0 + S * S) * (1.0 + S * S);
  CHECK(gronwall_rhs(1.0, 0.25, S, p) == doctest::Approx(0.25 + std::sqrt(1.0 + g) * std::exp(g / 2.0)).epsilon(1e-14));
  CHECK(gronwall_rhs(1.0, 0.0, 0.0, p) >= 1.0);
  ModelParams linear = p;
  linear.c1 = 0.0;
  CHECK(gronwall_rhs(2.0, 0.5, 3.0, linear) == 2.5);
}

TEST_CASE("right-hand sides are monotone in their inputs") {
  Gen g(41);
  ModelParams p;
  for (int trial = 0; trial < 500; ++trial) {
    const double a = g.uniform(0.0, 3.0), b = g.uniform(0.0, 3.0), c = g.uniform(0.0, 3.0);
    const double h = g.uniform(1e-6, 0.5);
    const double base = gronwall_rhs(a, b, c, p);
    CHECK(gronwall_rhs(a + h, b, c, p) >= base);
    CHECK(gronwall_rhs(a, b + h, c, p) >= base);
    CHECK(gronwall_rhs(a, b, c + h, p) >= base);
    const double K = growth_constant(0.8, GrowthItem::item_i, p).K;
    const double rb = bootstrap_rho_rhs(a, b, c, 0.1, 0.8, K, p);
    CHECK(bootstrap_rho_rhs(a, b, c + h, 0.1, 0.8, K, p) >= rb);
    const double tb = top_outer_rhs(a, b, c, 0.9, p);
    CHECK(top_outer_rhs(a, b, c + h, 0.9, p) >= tb);
    CHECK(top_outer_rhs(a + h, b, c, 0.9, p) >= tb);
  }
}

TEST_CASE("bootstrap and outer right-hand sides against direct formulas") {
  ModelParams p;
  p.T = 0.5;
  const double K = 0.3;
  CHECK(bootstrap_rho_rhs(1.0, 2.0, 4.0, 0.1, 0.8, K, p) ==
        doctest::Approx(3.0 + std::pow(0.5, 0.1) / 0.1 * 0.3 * 5.0).epsilon(1e-14));
  const double K3 = 1.0 / std::sqrt(3.0);
  CHECK(top_outer_rhs(1.0, 0.5, 2.0, 0.9, p) ==
        doctest::Approx(1.5 + std::pow(0.5, 0.1) / 0.1 * K3 * 3.0).epsilon(1e-14));
}

TEST_CASE("bounds hold on simulated paths") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Run r = noisy_run(16, 64, seed, SpectralVector{1.0, -0.5});
    CAPTURE(seed);
    const BoundReport g = gronwall_bound(r.traj, r.noise, r.config);
    const BoundReport rho0 = bootstrap_rho_bound(r.traj, r.noise, r.config);
    const BoundReport rho1 = bootstrap_rho_bound(r.traj, r.noise, r.config, 0.2, 0.78);
    const BoundReport top = bootstrap_top_bound(r.traj, r.noise, r.config);
    CHECK(g.pass);
    CHECK(rho0.pass);
    CHECK(rho1.pass);
    CHECK(top.pass);
    CHECK(g.certified());
    CHECK(top.certified());
    CHECK(g.slack() >= 0.0);
  }
}

TEST_CASE("zero noise and zero data") {
  SolverConfig c;
  c.N = 8;
  c.K = 64;
  c.xi = SpectralVector(1);
  c.spec = NoiseSpec::power_law(0.5, 0.05, 8, c.params);
  const NoisePathSet z = zero_noise(c);
  const Trajectory t = solve(c, z);
  const BoundReport g = gronwall_bound(t, z, c);
  CHECK(g.pass);
  CHECK(g.lhs == 0.0);
  const BoundReport r = bootstrap_rho_bound(t, z, c);
  CHECK(r.pass);
  CHECK(r.lhs == 0.0);
  const BoundReport top = bootstrap_top_bound(t, z, c);
  CHECK(top.pass);
}

TEST_CASE("the gronwall bound does not depend on the Galerkin level") {
  SolverConfig c;
  c.K = 256;
  c.spec = NoiseSpec::power_law(0.5, 0.05, 64, c.params);
  const NoisePathSet noise = sample_convolution(c.spec, uniform_grid(1.0, 256), 77, c.params);
  double rhs_max = -1.0;
  std::vector<double> rhs_values;
  for (std::size_t N : {8u, 16u, 32u, 64u}) {
    c.N = N;
    const Trajectory t = solve(c, noise);
    const BoundReport g = gronwall_bound(t, noise, c);
    CHECK(g.pass);
    // rhs at the final time depends only on xi and the shared noise path
    const double S = noise.sup_norm(64, 0.5, c.params);
    rhs_values.push_back(gronwall_rhs(1.0, hr_norm(noise.state(256, 64), 0.0, c.params), S, c.params));
    rhs_max = std::max(rhs_max, g.rhs);
  }
  for (double v : rhs_values) CHECK(v == rhs_values.front());
  CHECK(rhs_max > 0.0);
}

TEST_CASE("estimated top bound with a sampled middle constant") {
  const Run r = noisy_run(16, 32, 3);
  TopBoundOptions opt;
  opt.mode = TopBoundMode::estimated;
  opt.middle_samples = 2000;
  const BoundReport top = bootstrap_top_bound(r.traj, r.noise, r.config, opt);
  CHECK(top.mode == "estimated");
  CHECK_FALSE(top.certified());
  CHECK(top.pass);
  bool has_estimated = false;
  for (const auto& c : top.constants) has_estimated = has_estimated || c.source == ConstantSource::estimated;
  CHECK(has_estimated);

  const double C2 = estimate_middle_constant(0.3, 2000, 128, opt.middle_seed, r.config.params);
  CHECK(C2 > 0.0);
  CHECK(C2 == estimate_middle_constant(0.3, 2000, 128, opt.middle_seed, r.config.params));
  CHECK(estimate_middle_constant(0.3, 4000, 128, opt.middle_seed, r.config.params) >= C2);
  opt.middle_constant = C2;
  CHECK(bootstrap_top_bound(r.traj, r.noise, r.config, opt).rhs == top.rhs);
}

TEST_CASE("linear model: nonlinear terms vanish") {
  Run r = noisy_run(8, 16, 4);
  r.config.params.c1 = 0.0;
  r.traj = solve(r.config, r.noise);
  const BoundReport g = gronwall_bound(r.traj, r.noise, r.config);
  CHECK(g.pass);
  CHECK(growth_constant(0.0, GrowthItem::item_iii, r.config.params).K == 0.0);
  const BoundReport top = bootstrap_top_bound(r.traj, r.noise, r.config);
  CHECK(top.pass);
}

TEST_CASE("parameter domains are enforced") {
  const Run r = noisy_run(8, 16, 5);
  CHECK_THROWS_AS(gronwall_bound(r.traj, r.noise, r.config, 0.3), InvalidArgument);
  CHECK_THROWS_AS(bootstrap_rho_bound(r.traj, r.noise, r.config, 0.25), InvalidArgument);
  CHECK_THROWS_AS(bootstrap_rho_bound(r.traj, r.noise, r.config, 0.1, 0.75), InvalidArgument);
  CHECK_THROWS_AS(bootstrap_rho_bound(r.traj, r.noise, r.config, 0.2, 0.85), InvalidArgument);
  TopBoundOptions opt;
  opt.kappa = 1.0;
  CHECK_THROWS_AS(bootstrap_top_bound(r.traj, r.noise, r.config, opt), InvalidArgument);
  opt.kappa = 0.9;
  opt.mode = TopBoundMode::estimated;
  opt.alpha2 = 0.5;
  CHECK_THROWS_AS(bootstrap_top_bound(r.traj, r.noise, r.config, opt), InvalidArgument);
  opt.alpha2 = 0.3;
  opt.alpha1 = 0.8;  // (2 + 0.3)/3 = 0.7667
  CHECK_THROWS_AS(bootstrap_top_bound(r.traj, r.noise, r.config, opt), InvalidArgument);
  CHECK_THROWS_AS(estimate_middle_constant(0.2, 10, 8, 1, r.config.params), InvalidArgument);

  const NoisePathSet coarse = r.noise.prefix(4);
  CHECK_THROWS_AS(gronwall_bound(r.traj, coarse, r.config), InvalidArgument);
}

TEST_CASE("report JSON carries mode and constant sources") {
  const Run r = noisy_run(8, 16, 6);
  std::vector<BoundReport> reports = {gronwall_bound(r.traj, r.noise, r.config),
                                      bootstrap_top_bound(r.traj, r.noise, r.config)};
  TopBoundOptions opt;
  opt.mode = TopBoundMode::estimated;
  opt.middle_samples = 200;
  reports.push_back(bootstrap_top_bound(r.traj, r.noise, r.config, opt));
  const auto j = nlohmann::json::parse(reports_to_json(reports));
  REQUIRE(j.size() == 3);
  CHECK(j[0]["bound"] == "gronwall");
  CHECK(j[0]["mode"] == "certified");
  CHECK(j[0]["constants"][0]["source"] == "closed-form");
  CHECK(j[2]["mode"] == "estimated");
  bool saw = false;
  for (const auto& c : j[2]["constants"]) saw = saw || c["source"] == "estimated";
  CHECK(saw);
  CHECK(to_string(ConstantSource::derived_certified) == "derived-certified");
}
