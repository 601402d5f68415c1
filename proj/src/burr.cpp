#include "cburr/burr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cburr/error.hpp"
#include "cburr/numeric.hpp"

namespace cburr {

namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(v));
  }
}

void check_y(double y) {
  if (!(y > 0.0) || std::isnan(y)) {
    throw DomainError("Burr family support is y > 0, got y = " + std::to_string(y));
  }
}

// (y/gamma)^c / (1 + (y/gamma)^c) / y; 1/y overflows for subnormal y.
double ratio_over_y(const BurrKernel& k, double y) {
  if (y > 1e-300) return k.u_over_1pu / y;
  return std::exp(-softplus(-k.t) - std::log(y));
}

}  // namespace

BurrParams::BurrParams(double gamma, double alpha, double c)
    : gamma_(gamma), alpha_(alpha), c_(c) {
  check_positive(gamma, "gamma");
  check_positive(alpha, "alpha");
  check_positive(c, "c");
}

CBurrParams::CBurrParams(double gamma, double alpha, double c, double lambda,
                         Regime regime)
    : gamma_(gamma), alpha_(alpha), c_(c), lambda_(lambda), regime_(regime) {
  check_positive(gamma, "gamma");
  check_positive(alpha, "alpha");
  check_positive(c, "c");
  check_lambda(lambda, regime);
}

BurrKernel burr_kernel(const BurrParams& p, double y) {
  check_y(y);
  BurrKernel k{};
  k.t = p.c() * (std::log(y) - std::log(p.gamma()));
  if (std::isinf(y)) {
    k.t = std::numeric_limits<double>::infinity();
    k.log1p_u = k.t;
    k.u_over_1pu = 1.0;
    k.survival = 0.0;
    k.cdf = 1.0;
    return k;
  }
  k.log1p_u = softplus(k.t);
  k.u_over_1pu = logistic(k.t);
  k.survival = std::exp(-p.alpha() * k.log1p_u);
  k.cdf = -std::expm1(-p.alpha() * k.log1p_u);
  return k;
}

double burr_cdf(const BurrParams& p, double y) { return burr_kernel(p, y).cdf; }

double burr_survival(const BurrParams& p, double y) { return burr_kernel(p, y).survival; }

double burr_logpdf(const BurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p, y);
  return std::log(p.c() * p.alpha()) - std::log(y) + k.t - (p.alpha() + 1.0) * k.log1p_u;
}

double burr_pdf(const BurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p, y);
  return burr_hazard(p, y) * k.survival;
}

double burr_hazard(const BurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p, y);
  return p.c() * p.alpha() * ratio_over_y(k, y);
}

double burr_quantile(const BurrParams& p, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("burr_quantile: u must be in (0, 1)");
  // (y/gamma)^c = (1 - u)^{-1/alpha} - 1
  return p.gamma() * std::exp(log_expm1(-std::log1p(-u) / p.alpha()) / p.c());
}

double BurrBase::pdf(double y) const { return burr_pdf(p_, y); }
double BurrBase::cdf(double y) const { return burr_cdf(p_, y); }
double BurrBase::survival(double y) const { return burr_survival(p_, y); }
double BurrBase::hazard(double y) const { return burr_hazard(p_, y); }
double BurrBase::quantile(double u) const { return burr_quantile(p_, u); }
double BurrBase::support_upper() const { return std::numeric_limits<double>::infinity(); }

double cburr_survival(const CBurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p.base(), y);
  return k.survival * std::exp(-p.lambda() * k.cdf);
}

double cburr_cdf(const CBurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p.base(), y);
  // 1 - Fbar e^{-lambda F}; expm1 keeps the lower tail accurate.
  const double log_surv = -p.alpha() * k.log1p_u - p.lambda() * k.cdf;
  return -std::expm1(log_surv);
}

double cburr_logpdf(const CBurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p.base(), y);
  const double log_f =
      std::log(p.c() * p.alpha()) - std::log(y) + k.t - (p.alpha() + 1.0) * k.log1p_u;
  return log_f + std::log1p(p.lambda() * k.survival) - p.lambda() * k.cdf;
}

double cburr_pdf(const CBurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p.base(), y);
  const double f = p.c() * p.alpha() * ratio_over_y(k, y) * k.survival;
  return f * (1.0 + p.lambda() * k.survival) * std::exp(-p.lambda() * k.cdf);
}

double cburr_hazard(const CBurrParams& p, double y) {
  const BurrKernel k = burr_kernel(p.base(), y);
  return p.c() * p.alpha() * ratio_over_y(k, y) * (1.0 + p.lambda() * k.survival);
}

double cburr_quantile(const CBurrParams& p, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("cburr_quantile: u must be in (0, 1)");
  const double lambda = p.lambda();
  if (!(lambda > -1.0)) {
    throw DomainError("cburr_quantile: cdf is not monotone for lambda <= -1");
  }
  // Gbar depends on y only through s = Fbar(y): Gbar = s exp(lambda (s - 1)).
  // With v = log s, solve phi(v) = v + lambda (e^v - 1) - log(1 - u) = 0, which
  // is strictly increasing for lambda > -1 and bracketed below.
  const double log_target = std::log1p(-u);
  auto phi = [&](double v) { return v + lambda * std::expm1(v) - log_target; };
  double lo = log_target - std::abs(lambda) - 1.0;
  double hi = 0.0;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) < 0.0) lo = mid; else hi = mid;
  }
  double v = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double step = phi(v) / (1.0 + lambda * std::exp(v));
    const double next = v - step;
    if (!(next >= lo - 1e-9 && next <= hi + 1e-9) || !std::isfinite(next)) break;
    v = next;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(v))) break;
  }
  if (!std::isfinite(v)) {
    throw NumericError("cburr_quantile: solver diverged at u = " + std::to_string(u));
  }
  const double s = -v / p.alpha();
  if (!(s > 0.0)) return std::numeric_limits<double>::min();
  return p.gamma() * std::exp(log_expm1(s) / p.c());
}

double cburr_draw(const CBurrParams& p, Rng& rng) {
  if (p.lambda() >= 0.0) return draw_compounded_min(BurrBase(p.base()), p.lambda(), rng);
  return cburr_quantile(p, rng.uniform());
}

std::vector<double> cburr_sample(const CBurrParams& p, std::size_t n, Rng& rng) {
  if (p.lambda() >= 0.0) return sample_compounded_min(BurrBase(p.base()), p.lambda(), n, rng);
  return cburr_sample_inverse(p, n, rng);
}

std::vector<double> cburr_sample_inverse(const CBurrParams& p, std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cburr_quantile(p, rng.uniform()));
  return out;
}

}  // namespace cburr
