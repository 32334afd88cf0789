#include "sburgers/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sburgers/parallel.hpp"
#include "sburgers/philox.hpp"

namespace sburgers {

NoiseSpec NoiseSpec::power_law(double beta, double delta, std::size_t modes,
                               const ModelParams& params, double scale) {
  NoiseSpec spec;
  spec.beta = beta;
  spec.delta = delta;
  spec.law = NoiseLaw::power;
  spec.scale = scale;
  spec.amps.resize(modes);
  for (std::size_t n = 1; n <= modes; ++n) {
    spec.amps[n - 1] = scale * std::pow(-eigenvalue(n, params), -beta) *
                       std::pow(static_cast<double>(n), -0.5 - delta);
  }
  spec.validate(params);
  return spec;
}

NoiseSpec NoiseSpec::from_amplitudes(double beta, std::vector<double> amps) {
  NoiseSpec spec;
  spec.beta = beta;
  spec.delta = 0.0;
  spec.law = NoiseLaw::explicit_amplitudes;
  spec.amps = std::move(amps);
  return spec;
}

void NoiseSpec::validate(const ModelParams& params) const {
  if (!std::isfinite(beta)) throw InvalidArgument("NoiseSpec: beta must be finite");
  for (double b : amps) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw InvalidArgument("NoiseSpec: amplitudes must be finite and nonnegative");
    }
  }
  if (law != NoiseLaw::power) return;
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("NoiseSpec: power law needs delta > 0 for B in HS(H, H_beta)");
  }
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidArgument("NoiseSpec: bad scale");
  for (std::size_t n = 1; n <= amps.size(); ++n) {
    const double expected = scale * std::pow(-eigenvalue(n, params), -beta) *
                            std::pow(static_cast<double>(n), -0.5 - delta);
    if (std::abs(amps[n - 1] - expected) > 1e-12 * expected) {
      throw InvalidArgument("NoiseSpec: amplitudes do not follow the declared power law");
    }
  }
}

double NoiseSpec::hilbert_schmidt_sq(const ModelParams& params) const {
  double acc = 0.0;
  for (std::size_t n = 1; n <= amps.size(); ++n) {
    const double w = amps[n - 1] * std::pow(-eigenvalue(n, params), beta);
    acc += w * w;
  }
  return acc;
}

std::vector<double> uniform_grid(double T, std::size_t steps) {
  if (!(T > 0.0) || steps == 0) throw InvalidArgument("uniform_grid: need T > 0 and steps >= 1");
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    t[k] = T * static_cast<double>(k) / static_cast<double>(steps);
  }
  return t;
}

OuTransition ou_transition(double mu, double amplitude, double dt) {
  return {std::exp(mu * dt), amplitude * amplitude * (-std::expm1(2.0 * mu * dt)) / (-2.0 * mu)};
}

NoisePathSet::NoisePathSet(std::vector<double> times, std::uint64_t seed, std::size_t modes)
    : times_(std::move(times)), seed_(seed), modes_(modes), values_(times_.size() * modes, 0.0) {
  if (times_.empty()) throw InvalidArgument("NoisePathSet: empty time grid");
}

SpectralVector NoisePathSet::state(std::size_t k, std::size_t n_keep) const {
  if (n_keep > modes_) throw InvalidArgument("NoisePathSet::state: resolution exceeds sampled modes");
  const double* row = values_.data() + k * modes_;
  return SpectralVector(std::vector<double>(row, row + n_keep));
}

NoisePathSet NoisePathSet::prefix(std::size_t n) const {
  if (n > modes_) throw InvalidArgument("NoisePathSet::prefix: resolution exceeds sampled modes");
  NoisePathSet out(times_, seed_, n);
  for (std::size_t k = 0; k < times_.size(); ++k) {
    std::copy_n(values_.data() + k * modes_, n, out.values_.data() + k * n);
  }
  return out;
}

std::uint64_t NoisePathSet::checksum(std::size_t n) const {
  if (n > modes_) throw InvalidArgument("NoisePathSet::checksum: resolution exceeds sampled modes");
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(values_[k * modes_ + i]);
      for (int b = 0; b < 8; ++b) {
        h ^= (bits & 0xffu);
        h *= 0x100000001b3ull;
        bits >>= 8;
      }
    }
  }
  return h;
}

double NoisePathSet::sup_norm(std::size_t n_keep, double r, const ModelParams& params) const {
  n_keep = std::min(n_keep, modes_);
  std::vector<double> weight(n_keep);
  for (std::size_t n = 1; n <= n_keep; ++n) weight[n - 1] = std::pow(-eigenvalue(n, params), 2.0 * r);
  double best = 0.0;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    const double* row = values_.data() + k * modes_;
    double acc = 0.0;
    for (std::size_t i = 0; i < n_keep; ++i) acc += weight[i] * row[i] * row[i];
    best = std::max(best, acc);
  }
  return std::sqrt(best);
}

void NoisePathSet::write_csv(std::ostream& os) const {
  os << "time,mode,value\n";
  char buf[96];
  for (std::size_t k = 0; k < times_.size(); ++k) {
    for (std::size_t n = 1; n <= modes_; ++n) {
      std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g\n", times_[k], n, value(k, n));
      os << buf;
    }
  }
}

NoisePathSet sample_convolution(const NoiseSpec& spec, std::span<const double> grid,
                                std::uint64_t seed, const ModelParams& params, std::size_t modes) {
  spec.validate(params);
  if (grid.empty() || grid[0] != 0.0) throw InvalidArgument("sample_convolution: grid must start at 0");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1]) || !std::isfinite(grid[k])) {
      throw InvalidArgument("sample_convolution: grid must be strictly increasing");
    }
  }
  const std::size_t M = (modes == 0) ? spec.modes() : std::min(modes, spec.modes());

  NoisePathSet out(std::vector<double>(grid.begin(), grid.end()), seed, M);
  std::vector<double> mu(M);
  for (std::size_t n = 1; n <= M; ++n) mu[n - 1] = eigenvalue(n, params);

  std::vector<double> decay(M);
  std::vector<double> sigma(M);
  double cached_dt = -1.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double dt = grid[k + 1] - grid[k];
    if (dt != cached_dt) {
      for (std::size_t i = 0; i < M; ++i) {
        const OuTransition tr = ou_transition(mu[i], spec.amps[i], dt);
        decay[i] = tr.decay;
        sigma[i] = std::sqrt(tr.variance);
      }
      cached_dt = dt;
    }
    for (std::size_t n = 1; n <= M; ++n) {
      const double prev = out.value(k, n);
      const double s = sigma[n - 1];
      out.value_ref(k + 1, n) = decay[n - 1] * prev + (s == 0.0 ? 0.0 : s * indexed_normal(seed, n, k));
    }
  }
  return out;
}

double tail_sup_norm(const NoisePathSet& paths, std::size_t n_cut, double gamma,
                     const ModelParams& params) {
  const std::size_t M = paths.modes();
  if (n_cut < 1 || n_cut >= M) {
    throw InvalidArgument("tail_sup_norm: need 1 <= n_cut < sampled modes");
  }
  std::vector<double> weight(M - n_cut);
  for (std::size_t n = n_cut + 1; n <= M; ++n) {
    weight[n - n_cut - 1] = std::pow(-eigenvalue(n, params), 2.0 * gamma);
  }
  double best = 0.0;
  for (std::size_t k = 0; k < paths.times().size(); ++k) {
    const auto row = paths.row(k);
    double acc = 0.0;
    for (std::size_t n = n_cut + 1; n <= M; ++n) acc += weight[n - n_cut - 1] * row[n - 1] * row[n - 1];
    best = std::max(best, acc);
  }
  return std::sqrt(best);
}

double moment_bound_rhs(const NoiseSpec& spec, std::size_t n_keep, double alpha, double gamma,
                        double p, double T, const ModelParams& params) {
  require_positive_c0(params);
  const double alpha_max = 0.5 - std::max(0.0, gamma - spec.beta);
  if (!(alpha > 0.0 && alpha < alpha_max)) {
    throw InvalidArgument("moment_bound_rhs: need 0 < alpha < 1/2 - max(0, gamma - beta)");
  }
  if (!(p * alpha > 1.0)) throw InvalidArgument("moment_bound_rhs: need p > 1/alpha");
  if (!(T > 0.0)) throw InvalidArgument("moment_bound_rhs: need T > 0");

  const std::size_t top = std::min(n_keep, spec.modes());
  double sum = 0.0;
  for (std::size_t n = 1; n <= top; ++n) {
    const double b = spec.amps[n - 1];
    sum += b * b * std::pow(-eigenvalue(n, params), 2.0 * (alpha + gamma) - 1.0);
  }
  const double gamma_fn = std::tgamma(1.0 - 2.0 * alpha);
  return std::pow(T, alpha) * std::pow(2.0, alpha - 1.0) * (p * (p - 1.0) / (p * alpha - 1.0)) *
         std::sqrt(gamma_fn * sum);
}

std::vector<double> sampled_sup_norms(const NoiseSpec& spec, std::span<const double> grid,
                                      std::span<const std::uint64_t> seeds, std::size_t n_keep,
                                      double gamma, const ModelParams& params, unsigned threads) {
  std::vector<double> out(seeds.size(), 0.0);
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    // Only the first n_keep modes enter; by coupling they equal the prefix of any larger sample.
    const NoisePathSet path = sample_convolution(spec, grid, seeds[i], params, n_keep);
    out[i] = path.sup_norm(n_keep, gamma, params);
  });
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MomentReport moment_bound_check(std::span<const double> sup_norms, const NoiseSpec& spec,
                                std::size_t n_keep, double alpha, double gamma, double p,
                                const ModelParams& params) {
  MomentReport report{};
  report.paths = sup_norms.size();
  report.n_keep = n_keep;
  report.alpha = alpha;
  report.gamma = gamma;
  report.p = p;
  report.rhs = moment_bound_rhs(spec, n_keep, alpha, gamma, p, params.T, params);
  if (sup_norms.empty()) throw InvalidArgument("moment_bound_check: no paths");
  std::vector<double> powers(sup_norms.size());
  for (std::size_t i = 0; i < sup_norms.size(); ++i) powers[i] = std::pow(sup_norms[i], p);
  report.lhs = std::pow(pairwise_sum(powers) / static_cast<double>(powers.size()), 1.0 / p);
  return report;
}

}  // namespace sburgers
