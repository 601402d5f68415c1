#include "cburr/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "cburr/error.hpp"
#include "cburr/numeric.hpp"

namespace cburr {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_existence(const BurrParams& p, double r, int k) {
  const double lhs = p.alpha() * (k + 1);
  const double rhs = r / p.c();
  if (!(lhs > rhs)) {
    std::ostringstream os;
    os << "moment of order r = " << r << " does not exist: requires alpha*(k+1) > r/c, got "
       << lhs << " <= " << rhs;
    throw MomentNonexistenceError(os.str());
  }
}

// Sums sum_j sum_k a_{j,k} (term(k) + lambda term(k+1)) with the stopping rule
// |j-th term| < tol/10 for three consecutive j. `term(k)` must be cached for
// k = 0..max_j+1 by the caller.
SeriesResult sum_series(const std::vector<double>& term, double lambda, double tol,
                        int max_j, const char* what) {
  SeriesResult out;
  double rounding = 0.0;
  int quiet = 0;
  double last = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int j = 0; j <= max_j; ++j) {
    double inner = 0.0;
    double inner_abs = 0.0;
    for (int k = 0; k <= j; ++k) {
      const double a = series_coefficient(j, k, lambda);
      const double v = a * (term[k] + lambda * term[k + 1]);
      inner += v;
      inner_abs += std::abs(v);
    }
    out.value += inner;
    rounding += eps * inner_abs * (j + 1);
    out.terms = j + 1;
    last = std::abs(inner);
    if (last < tol / 10.0) {
      if (++quiet >= 3) {
        out.remainder = last * 10.0 + rounding;
        if (rounding > std::max(tol, 1e-8 * std::abs(out.value))) {
          std::ostringstream os;
          os << what << ": cancellation in the series exceeds tolerance (remainder "
             << out.remainder << " > " << tol << ")";
          throw TruncationError(os.str(), out.value, out.remainder);
        }
        return out;
      }
    } else {
      quiet = 0;
    }
  }
  out.remainder = last * 10.0 + rounding;
  std::ostringstream os;
  os << what << ": series did not converge within max_j = " << max_j;
  throw TruncationError(os.str(), out.value, out.remainder);
}

}  // namespace

double series_coefficient(int j, int k, double lambda) {
  if (k < 0 || k > j) return 0.0;
  if (lambda == 0.0) return j == 0 ? 1.0 : 0.0;
  const double log_mag = j * std::log(std::abs(lambda)) - std::lgamma(j + 1.0) + log_choose(j, k);
  int sign = ((j - k) % 2 == 0) ? 1 : -1;
  if (lambda < 0.0 && j % 2 == 1) sign = -sign;
  return sign * std::exp(log_mag);
}

double pwm_burr(const BurrParams& p, double r, int k) {
  check_existence(p, r, k);
  const double a = p.alpha() * (k + 1);
  const SignedLog g1 = log_gamma(a - r / p.c());
  const SignedLog g2 = log_gamma(r / p.c() + 1.0);
  const SignedLog g3 = log_gamma(a + 1.0);
  const double log_v = std::log(p.alpha()) + r * std::log(p.gamma()) + g1.log_abs +
                       g2.log_abs - g3.log_abs;
  return g1.sign * g2.sign * g3.sign * std::exp(log_v);
}

SeriesResult cburr_moment(const CBurrParams& p, double r, const SeriesControl& ctrl) {
  const BurrParams base = p.base();
  check_existence(base, r, 0);
  std::vector<double> m(ctrl.max_j + 2);
  for (int k = 0; k <= ctrl.max_j + 1; ++k) m[k] = pwm_burr(base, r, k);
  return sum_series(m, p.lambda(), ctrl.abs_tol, ctrl.max_j, "cburr_moment");
}

SeriesResult cburr_mrl(const CBurrParams& p, double t, const SeriesControl& ctrl) {
  if (!(t > 0.0)) throw DomainError("cburr_mrl: t must be positive");
  const BurrParams base = p.base();
  check_existence(base, 1.0, 0);
  const double gbar = cburr_survival(p, t);
  if (!(gbar > 1e-300)) {
    throw SupportExhaustedError("cburr_mrl: survival underflows at t = " + std::to_string(t));
  }
  // Residual PWM: int_t^inf (y - t) Fbar^k f dy = (1/(k+1)) int_t^inf Fbar^{k+1} dy
  //   = gamma / (c (k+1)) B(1/c, a - 1/c) I_{x'}(a - 1/c, 1/c),  a = alpha (k+1),
  // where x' = 1 / (1 + (t/gamma)^c).
  const double inv_c = 1.0 / p.c();
  const double tt = p.c() * (std::log(t) - std::log(p.gamma()));
  const double x_upper = logistic(-tt);
  std::vector<double> resid(ctrl.max_j + 2);
  for (int k = 0; k <= ctrl.max_j + 1; ++k) {
    const double a = p.alpha() * (k + 1);
    const double b2 = a - inv_c;
    const double log_beta = log_gamma(inv_c).log_abs + log_gamma(b2).log_abs -
                            log_gamma(a).log_abs;
    const double ib = boost::math::ibeta(b2, inv_c, x_upper);
    resid[k] = p.gamma() * inv_c / (k + 1) * std::exp(log_beta) * ib;
  }
  SeriesResult s = sum_series(resid, p.lambda(), ctrl.abs_tol * gbar, ctrl.max_j, "cburr_mrl");
  s.value /= gbar;
  s.remainder /= gbar;
  return s;
}

}  // namespace cburr
