#pragma once

#include "cburr/burr.hpp"

namespace cburr {

/// Truncation control for the double series over a_{j,k}.
struct SeriesControl {
  int max_j = 200;
  double abs_tol = 1e-12;
};

/// A truncated series value with its estimated remainder.
struct SeriesResult {
  double value = 0.0;
  double remainder = 0.0;
  int terms = 0;  // number of outer (j) terms summed
};

/// a_{j,k} = (1/j!) C(j,k) (-1)^{j-k} lambda^j, the coefficients of
/// exp(-lambda F) = sum_j sum_k a_{j,k} Fbar^k.
double series_coefficient(int j, int k, double lambda);

/// Survival-weighted probability weighted moment of the Burr base,
/// M_{r,0,k} = E[Y^r Fbar(Y)^k] = alpha gamma^r Gamma(alpha(k+1) - r/c)
///             Gamma(r/c + 1) / Gamma(alpha(k+1) + 1).
/// Throws MomentNonexistenceError unless alpha(k+1) > r/c.
double pwm_burr(const BurrParams& p, double r, int k);

/// E(Y^r) for the compounded Burr via
///   sum_j sum_k a_{j,k} (M_{r,0,k} + lambda M_{r,0,k+1}).
/// Requires alpha > r/c. The reported remainder includes a rounding estimate
/// for the alternating inner sums.
SeriesResult cburr_moment(const CBurrParams& p, double r, const SeriesControl& ctrl = {});

/// Mean residual life E(Y - t | Y > t), expanded in the same coefficients with
/// the residual PWMs int_t^inf (y - t) Fbar^k f dy written as incomplete beta
/// functions.
SeriesResult cburr_mrl(const CBurrParams& p, double t, const SeriesControl& ctrl = {});

}  // namespace cburr
