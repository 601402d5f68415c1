#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

// Boost double-exponential quadrature, kept apart from the library's own
// Gauss-Kronrod so the two can check each other.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, b, 1e-13);
}

inline double integrate_tail(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> es(15);
  return es.integrate([&](double t) { return f(a + t); }, 0.0,
                      std::numeric_limits<double>::infinity(), 1e-13);
}

// Integral over [a, b] with y = a + t^4, which tames integrable endpoint
// singularities at a.
inline double integrate_from(const std::function<double(double)>& f, double a, double b) {
  return integrate(
      [&](double t) {
        const double y = a + t * t * t * t;
        return y > a ? 4.0 * t * t * t * f(y) : 0.0;
      },
      0.0, std::pow(b - a, 0.25));
}

// Integral over (0, inf), split at `mid`.
inline double integrate_positive(const std::function<double(double)>& f, double mid) {
  return integrate_from(f, 0.0, mid) + integrate_tail(f, mid);
}

// sup |F_n - F| for a one-sample KS test.
template <class Cdf>
double ks_distance(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

// Kolmogorov survival Q(t) = 2 sum (-1)^{k-1} exp(-2 k^2 t^2).
inline double kolmogorov_q(double t) {
  if (t < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

inline double ks_two_sample_p(double d, std::size_t n, std::size_t m) {
  const double en = std::sqrt(static_cast<double>(n) * m / static_cast<double>(n + m));
  return kolmogorov_q((en + 0.12 + 0.11 / en) * d);
}

inline double dkw_bound(std::size_t n, double alpha = 0.01) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace oracle
