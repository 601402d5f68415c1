#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cburr/burr.hpp"
#include "cburr/compound.hpp"
#include "cburr/rng.hpp"

namespace cburr {

/// The compounded Burr model and the competitor families it is compared with.
enum class Family {
  cburr,
  burr,
  lomax,
  log_normal,
  pareto,
  power_law,
  power_law_cutoff,
  poisson,
  exponentiated_burr,
  burr_mo,
};

/// The nine competitor families, in comparison-table order.
const std::vector<Family>& competitor_families();
/// All ten families (cburr first).
const std::vector<Family>& all_families();

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);
bool is_discrete(Family f);

/// Parameter names in storage order. Exponentiated Burr and Burr-MO accept an
/// optional trailing "scale" (default 1).
std::vector<std::string> param_names(Family f, bool with_scale = false);

/// A family plus a concrete parameter vector. Parameter layout per family:
///   cburr              gamma, alpha, c, lambda
///   burr               gamma, alpha, c
///   lomax              alpha, gamma
///   log-normal         mu, sigma
///   pareto             alpha, x_m                 (continuous, y >= x_m)
///   power-law          alpha, k_min               (discrete zeta law)
///   power-law-cutoff   alpha, lambda, k_min       (discrete, e^{-lambda k} cutoff)
///   poisson            mu
///   exponentiated-burr alpha, beta, theta [, scale]
///   burr-mo            alpha (tilt), c, k [, scale]
/// Validated at construction; normalizing constants are cached.
class ModelSpec {
 public:
  ModelSpec(Family family, std::vector<double> params, Regime regime = Regime::validity);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  Regime regime() const { return regime_; }
  bool discrete() const { return is_discrete(family_); }
  /// Number of fitted parameters (the length of params()).
  int param_count() const { return static_cast<int>(params_.size()); }

  /// Density for continuous families, probability mass for discrete ones.
  double pdf(double y) const;
  double logpdf(double y) const;
  /// P(Y <= y).
  double cdf(double y) const;
  /// Continuous families only.
  double quantile(double u) const;
  double draw(Rng& rng) const;
  std::vector<double> sample(std::size_t n, Rng& rng) const;

  /// P(round(Y) = k): the interval mass over [k - 1/2, k + 1/2) for continuous
  /// families (lower end clamped at 0), the pmf for discrete ones.
  double degree_probability(long long k) const;
  /// P(round(Y) <= k), consistent with degree_probability.
  double degree_cdf(long long k) const;
  /// P(round(Y) >= k); uses the survival function directly for cburr.
  double degree_survival(long long k) const;

  CBurrParams cburr() const;
  BurrParams burr() const;

 private:
  double scale() const;
  void check_support(double y) const;

  Family family_;
  std::vector<double> params_;
  Regime regime_;
  double log_norm_ = 0.0;  // discrete power-law families
};

/// Free-function forms of the per-family evaluators.
double competitor_pdf(const ModelSpec& spec, double y);
double competitor_cdf(const ModelSpec& spec, double y);
double competitor_logpdf(const ModelSpec& spec, double y);

/// Normalizer sum_{k>=k_min} k^{-alpha} e^{-lambda k} by direct summation,
/// stopped once the geometric tail bound is below 1e-10 of the running sum.
double power_law_cutoff_normalizer(double alpha, double lambda, double k_min);

}  // namespace cburr
