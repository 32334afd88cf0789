#pragma once

// F(w) = c1 w dw/dx on finite sine spans, its derivative, and the closed-form
// estimates on F used by the a priori bound checkers.

#include <cstddef>
#include <string>

#include "sburgers/spectral.hpp"

namespace sburgers {

/// Exact coefficients of F(v) = (c1/2) d(v^2)/dx on modes 1..2N, by direct
/// O(N^2) accumulation of the product-to-sum identity.
SpectralVector eval_F_direct(const SpectralVector& v, const ModelParams& params);

/// Same contract as eval_F_direct, computed through a dealiased physical grid
/// with fast sine and cosine transforms.
SpectralVector eval_F_fast(const SpectralVector& v, const ModelParams& params);

/// Picks the faster of the two paths for the size of v.
SpectralVector eval_F(const SpectralVector& v, const ModelParams& params);

/// F'(v)w = c1 (w dv + v dw) on modes 1..len(v)+len(w).
SpectralVector eval_F_prime(const SpectralVector& v, const SpectralVector& w,
                            const ModelParams& params);

/// <v, F(v)>_H. Vanishes up to rounding for every v.
double energy_pairing(const SpectralVector& v, const ModelParams& params);

enum class GrowthItem {
  item_i,    ///< |F(v)|_{H_{-alpha}} <= K |v|_H^2, alpha > 3/4
  item_iii,  ///< |F(v)|_H <= K |v|_{H_{1/2}}^2
};

struct GrowthConstants {
  double alpha;
  double K;
  std::string source;  ///< "closed-form"
};

/// Certified growth constants. item_i rejects alpha <= 3/4; item_iii ignores
/// alpha and reports alpha = 0.
GrowthConstants growth_constant(double alpha, GrowthItem which, const ModelParams& params);

/// Outcome of an inequality LHS <= RHS.
struct InequalityCheck {
  bool pass;
  double lhs;
  double rhs;
  [[nodiscard]] double slack() const noexcept { return rhs - lhs; }
};

/// |F(v)-F(w)|_H <= |c1|/(sqrt(3) c0) (|v|_{1/2} + |w|_{1/2}) |v-w|_{1/2}.
InequalityCheck lipschitz_check(const SpectralVector& v, const SpectralVector& w,
                                const ModelParams& params);

/// Sum of the certified embedding constants for iota = 1/2:
/// sup |u|_inf/|u|_{1/2} + sup |u|_{L4}^2/|u|_{1/2}^2
///   <= |3 c0|^{-1/2} + 3^{-1/2} c0^{-1} pi^{-1}.
double embedding_bracket(const ModelParams& params);

/// <v, F(v+w)> <= 3 c1^2/(8 c0) B^2 (|v|_H^2 + |w|_iota^2) |w|_iota^2 + |v|_{1/2}^2
/// with B = embedding_bracket. Only iota = 1/2 is supported.
InequalityCheck coercivity_check(const SpectralVector& v, const SpectralVector& w, double iota,
                                 const ModelParams& params);

/// |F(v)-F(w)|_{H_{-1/2}} / (|v-w|_{1/8} (1 + |v|_{1/8} + |w|_{1/8})); zero when v == w.
double extension_lipschitz_ratio(const SpectralVector& v, const SpectralVector& w,
                                 const ModelParams& params);

/// Certified substitute for the constant of the monotonicity-type bound
/// <F'(v)w, w> <= e |v|_{1/2}^2 |w|^2 + (C/e^2) |w|^2 + |w|_{1/2}^2:
/// C* = c1^4 (1 + pi^{-2}) / (1024 c0^3).
double monotonicity_constant(const ModelParams& params);

struct MonotonicityCheck {
  InequalityCheck check;
  /// Smallest C >= 0 for which this sample passes.
  double required_constant;
};

MonotonicityCheck monotonicity_check(const SpectralVector& v, const SpectralVector& w,
                                     double eps, const ModelParams& params);

/// |F(v+w) - F(v) - F'(v)w|_H <= |c1|/(sqrt(3) c0) |w|_{1/2}^2.
InequalityCheck derivative_remainder_check(const SpectralVector& v, const SpectralVector& w,
                                           const ModelParams& params);

}  // namespace sburgers
