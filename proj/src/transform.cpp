#include "transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace sburgers::detail {

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GridTransform::GridTransform(std::size_t intervals) : L_(intervals) {
  if (L_ < 2) throw std::invalid_argument("GridTransform: need at least 2 intervals");
  const int sine_len = static_cast<int>(L_ - 1);
  const int cos_len = static_cast<int>(L_ + 1);

  std::lock_guard<std::mutex> lock(planner_mutex());
  sine_in_ = fftw_alloc_real(L_ - 1);
  sine_out_ = fftw_alloc_real(L_ - 1);
  cos_in_ = fftw_alloc_real(L_ + 1);
  cos_out_ = fftw_alloc_real(L_ + 1);
  if (!sine_in_ || !sine_out_ || !cos_in_ || !cos_out_) throw std::bad_alloc();
  sine_plan_ = fftw_plan_r2r_1d(sine_len, sine_in_, sine_out_, FFTW_RODFT00, FFTW_ESTIMATE);
  cos_plan_ = fftw_plan_r2r_1d(cos_len, cos_in_, cos_out_, FFTW_REDFT00, FFTW_ESTIMATE);
  if (!sine_plan_ || !cos_plan_) throw std::runtime_error("GridTransform: FFTW planning failed");
}

GridTransform::~GridTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (sine_plan_) fftw_destroy_plan(static_cast<fftw_plan>(sine_plan_));
  if (cos_plan_) fftw_destroy_plan(static_cast<fftw_plan>(cos_plan_));
  fftw_free(sine_in_);
  fftw_free(sine_out_);
  fftw_free(cos_in_);
  fftw_free(cos_out_);
}

void GridTransform::sine_synthesis(std::span<const double> coeffs, std::span<double> values) {
  if (coeffs.size() >= L_ || values.size() < L_ - 1) {
    throw std::invalid_argument("GridTransform::sine_synthesis: size mismatch");
  }
  std::fill(sine_in_, sine_in_ + (L_ - 1), 0.0);
  std::copy(coeffs.begin(), coeffs.end(), sine_in_);
  fftw_execute(static_cast<fftw_plan>(sine_plan_));
  // RODFT00 computes 2 sum_n a_n sin(pi n j / L); the basis carries sqrt(2).
  constexpr double scale = std::numbers::sqrt2 / 2.0;
  for (std::size_t j = 0; j + 1 < L_; ++j) values[j] = scale * sine_out_[j];
}

void GridTransform::cosine_analysis(std::span<const double> samples, std::span<double> out) {
  if (samples.size() != L_ + 1 || out.size() >= L_) {
    throw std::invalid_argument("GridTransform::cosine_analysis: size mismatch");
  }
  std::copy(samples.begin(), samples.end(), cos_in_);
  fftw_execute(static_cast<fftw_plan>(cos_plan_));
  // REDFT00 returns L c_m for 0 < m < L.
  const double inv_L = 1.0 / static_cast<double>(L_);
  for (std::size_t m = 1; m <= out.size(); ++m) out[m - 1] = cos_out_[m] * inv_L;
}

GridTransform& GridTransform::for_thread(std::size_t intervals) {
  thread_local std::map<std::size_t, std::unique_ptr<GridTransform>> cache;
  auto& slot = cache[intervals];
  if (!slot) slot = std::make_unique<GridTransform>(intervals);
  return *slot;
}

}  // namespace sburgers::detail
