#pragma once

#include <functional>

namespace cburr {

/// log|Gamma(x)| with the sign of Gamma(x). Throws DomainError at poles.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog log_gamma(double x);

/// log(1 + e^t) without overflow for large t or loss for very negative t.
double softplus(double t);

/// 1 / (1 + e^{-t}).
double logistic(double t);

/// log(e^x - 1) for x > 0, without overflow for large x.
double log_expm1(double x);

/// Hurwitz zeta sum_{k>=0} (k + q)^{-s} for s > 1, q > 0. Direct summation
/// up to q + 20 followed by an Euler-Maclaurin tail; absolute tail error is
/// far below 1e-10 for s > 1.
double hurwitz_zeta(double s, double q);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) integration over the finite interval [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-12,
                     int max_intervals = 20000);

/// Integral over [a, inf) through the map y = a + t / (1 - t), t in [0, 1).
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol = 1e-10, double rel_tol = 1e-12,
                                 int max_intervals = 20000);

}  // namespace cburr
