#include "cburr/compound.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cburr/error.hpp"

namespace cburr {

double lambda_lower_bound(Regime regime) {
  return regime == Regime::validity ? -1.0 + kRegimeMargin : -2.0 + kRegimeMargin;
}

void check_lambda(double lambda, Regime regime) {
  if (!std::isfinite(lambda) || lambda < lambda_lower_bound(regime)) {
    throw DomainError("lambda = " + std::to_string(lambda) + " outside the " +
                      to_string(regime) + " regime (lambda >= " +
                      std::to_string(lambda_lower_bound(regime)) + ")");
  }
}

const char* to_string(Regime regime) {
  return regime == Regime::validity ? "validity" : "paper-compat";
}

Regime regime_from_string(std::string_view name) {
  if (name == "validity") return Regime::validity;
  if (name == "paper-compat") return Regime::paper_compat;
  throw DomainError("unknown regime '" + std::string(name) + "'");
}

Logistic::Logistic(double location, double scale) : location_(location), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(location)) {
    throw DomainError("logistic: scale must be positive");
  }
}

double Logistic::pdf(double y) const {
  const double z = -std::abs((y - location_) / scale_);
  const double e = std::exp(z);
  return e / (scale_ * (1.0 + e) * (1.0 + e));
}

double Logistic::cdf(double y) const {
  const double z = (y - location_) / scale_;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Logistic::survival(double y) const {
  return Logistic(-location_, scale_).cdf(-y);
}

double Logistic::hazard(double y) const {
  // f / Fbar = F / scale.
  return cdf(y) / scale_;
}

double Logistic::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("logistic quantile: p must be in (0, 1)");
  return location_ + scale_ * (std::log(p) - std::log1p(-p));
}

double Logistic::support_lower() const { return -std::numeric_limits<double>::infinity(); }
double Logistic::support_upper() const { return std::numeric_limits<double>::infinity(); }

namespace {

struct Probs {
  double cdf;
  double survival;
};

Probs probs_at(const BaseDistribution& base, double y) {
  if (y <= base.support_lower()) return {0.0, 1.0};
  if (y >= base.support_upper()) return {1.0, 0.0};
  return {base.cdf(y), base.survival(y)};
}

}  // namespace

double compounded_survival(const BaseDistribution& base, double lambda, double y,
                           Regime regime) {
  check_lambda(lambda, regime);
  const Probs p = probs_at(base, y);
  return p.survival * std::exp(-lambda * p.cdf);
}

double compounded_cdf(const BaseDistribution& base, double lambda, double y,
                      Regime regime) {
  return 1.0 - compounded_survival(base, lambda, y, regime);
}

double weight_function(const BaseDistribution& base, double lambda, double y,
                       Regime regime) {
  check_lambda(lambda, regime);
  const Probs p = probs_at(base, y);
  return (1.0 + lambda * p.survival) * std::exp(-lambda * p.cdf);
}

double compounded_pdf(const BaseDistribution& base, double lambda, double y,
                      Regime regime) {
  if (y <= base.support_lower() || y >= base.support_upper()) {
    check_lambda(lambda, regime);
    return 0.0;
  }
  return base.pdf(y) * weight_function(base, lambda, y, regime);
}

double compounded_hazard(const BaseDistribution& base, double lambda, double y,
                         Regime regime) {
  check_lambda(lambda, regime);
  const Probs p = probs_at(base, y);
  if (!(p.survival > 0.0)) {
    throw SupportExhaustedError("compounded_hazard: base survival is zero at y = " +
                                std::to_string(y));
  }
  return base.hazard(y) * (1.0 + lambda * p.survival);
}

double compounded_max_cdf(const BaseDistribution& base, double lambda, double z,
                          Regime regime) {
  check_lambda(lambda, regime);
  const Probs p = probs_at(base, z);
  return p.cdf * std::exp(-lambda * p.survival);
}

double max_weight_function(const BaseDistribution& base, double lambda, double z,
                           Regime regime) {
  check_lambda(lambda, regime);
  const Probs p = probs_at(base, z);
  return (1.0 + lambda * p.cdf) * std::exp(-lambda * p.survival);
}

double compounded_max_pdf(const BaseDistribution& base, double lambda, double z,
                          Regime regime) {
  if (z <= base.support_lower() || z >= base.support_upper()) {
    check_lambda(lambda, regime);
    return 0.0;
  }
  return base.pdf(z) * max_weight_function(base, lambda, z, regime);
}

double draw_compounded_min(const BaseDistribution& base, double lambda, Rng& rng) {
  const std::uint64_t extra = rng.poisson(lambda);
  double m = base.sample(rng);
  for (std::uint64_t i = 0; i < extra; ++i) m = std::min(m, base.sample(rng));
  return m;
}

std::vector<double> sample_compounded_min(const BaseDistribution& base, double lambda,
                                          std::size_t n, Rng& rng) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw GenerativeUnsupportedError(
        "generative sampling needs lambda >= 0; use inverse-cdf sampling for lambda < 0");
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw_compounded_min(base, lambda, rng));
  return out;
}

}  // namespace cburr
