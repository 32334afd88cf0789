#pragma once

// Thread-local FFTW workspaces for the type-I sine and cosine transforms used
// by the dealiased evaluation of F. Plans use FFTW_ESTIMATE so the algorithm
// choice, and therefore every rounding, is the same on every run.

#include <cstddef>
#include <span>

namespace sburgers::detail {

class GridTransform {
 public:
  /// `intervals` is L: the grid is x_j = j/L, j = 0..L.
  explicit GridTransform(std::size_t intervals);
  ~GridTransform();
  GridTransform(const GridTransform&) = delete;
  GridTransform& operator=(const GridTransform&) = delete;

  [[nodiscard]] std::size_t intervals() const noexcept { return L_; }

  /// Writes v(x_j) for j = 1..L-1 into values[0..L-2], where
  /// v = sum_n coeffs[n-1] sqrt(2) sin(n pi x). Requires coeffs.size() < L.
  void sine_synthesis(std::span<const double> coeffs, std::span<double> values);

  /// Given samples f(x_j), j = 0..L, of f = c_0 + sum_{m=1}^{L-1} c_m cos(m pi x),
  /// writes c_1..c_{out.size()} into out. Requires out.size() < L.
  void cosine_analysis(std::span<const double> samples, std::span<double> out);

  /// Workspace for a grid of `intervals` intervals, owned by the calling thread.
  static GridTransform& for_thread(std::size_t intervals);

 private:
  std::size_t L_;
  double* sine_in_ = nullptr;
  double* sine_out_ = nullptr;
  double* cos_in_ = nullptr;
  double* cos_out_ = nullptr;
  void* sine_plan_ = nullptr;
  void* cos_plan_ = nullptr;
};

}  // namespace sburgers::detail
