#include "cburr/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cburr/error.hpp"
#include "cburr/numeric.hpp"

namespace cburr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyRow {
  Family family;
  std::string_view name;
  bool discrete;
  std::vector<std::string> params;
};

const std::vector<FamilyRow>& family_table() {
  static const std::vector<FamilyRow> rows = {
      {Family::cburr, "cburr", false, {"gamma", "alpha", "c", "lambda"}},
      {Family::power_law, "power-law", true, {"alpha", "k_min"}},
      {Family::pareto, "pareto", false, {"alpha", "x_m"}},
      {Family::log_normal, "log-normal", false, {"mu", "sigma"}},
      {Family::poisson, "poisson", true, {"mu"}},
      {Family::power_law_cutoff, "power-law-cutoff", true, {"alpha", "lambda", "k_min"}},
      {Family::lomax, "lomax", false, {"alpha", "gamma"}},
      {Family::burr, "burr", false, {"gamma", "alpha", "c"}},
      {Family::exponentiated_burr, "exponentiated-burr", false, {"alpha", "beta", "theta"}},
      {Family::burr_mo, "burr-mo", false, {"alpha", "c", "k"}},
  };
  return rows;
}

const FamilyRow& row(Family f) {
  for (const auto& r : family_table()) {
    if (r.family == f) return r;
  }
  throw DomainError("unknown family");
}

bool has_optional_scale(Family f) {
  return f == Family::exponentiated_burr || f == Family::burr_mo;
}

void require(bool ok, Family f, const std::string& what) {
  if (!ok) throw DomainError(std::string(family_name(f)) + ": " + what);
}

bool is_integer(double y) { return std::isfinite(y) && y == std::floor(y); }

double log_poisson_pmf(double mu, double k) {
  return k * std::log(mu) - mu - std::lgamma(k + 1.0);
}

double log_minus_expm1(double x) {
  // log(1 - e^{x}) for x < 0
  return x > -0.693 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

}  // namespace

const std::vector<Family>& competitor_families() {
  static const std::vector<Family> fams = {
      Family::power_law, Family::pareto, Family::log_normal,
      Family::poisson,   Family::power_law_cutoff, Family::lomax,
      Family::burr,      Family::exponentiated_burr, Family::burr_mo};
  return fams;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> fams = [] {
    std::vector<Family> v{Family::cburr};
    for (Family f : competitor_families()) v.push_back(f);
    return v;
  }();
  return fams;
}

std::string_view family_name(Family f) { return row(f).name; }

Family family_from_name(std::string_view name) {
  for (const auto& r : family_table()) {
    if (r.name == name) return r.family;
  }
  throw DomainError("unknown model family '" + std::string(name) + "'");
}

bool is_discrete(Family f) { return row(f).discrete; }

std::vector<std::string> param_names(Family f, bool with_scale) {
  std::vector<std::string> names = row(f).params;
  if (with_scale && has_optional_scale(f)) names.emplace_back("scale");
  return names;
}

double power_law_cutoff_normalizer(double alpha, double lambda, double k_min) {
  if (!(lambda > 0.0)) throw DomainError("power-law-cutoff: lambda must be positive");
  const double tail_ratio_cap = std::exp(-lambda);
  double sum = 0.0;
  for (double k = k_min;; k += 1.0) {
    const double term = std::exp(-alpha * std::log(k) - lambda * k);
    sum += term;
    // Successive ratios are ((k+1)/k)^{-alpha} e^{-lambda}; bound the rest by a
    // geometric series using the largest ratio still to come.
    const double r =
        alpha >= 0.0 ? tail_ratio_cap : std::pow(1.0 + 1.0 / k, -alpha) * tail_ratio_cap;
    if (r < 1.0) {
      const double tail = term * r / (1.0 - r);
      if (tail < 1e-10 * sum) break;
    }
    if (k - k_min > 5e8) throw NumericError("power-law-cutoff: normalizer did not converge");
  }
  return sum;
}

ModelSpec::ModelSpec(Family family, std::vector<double> params, Regime regime)
    : family_(family), params_(std::move(params)), regime_(regime) {
  const std::size_t expected = row(family).params.size();
  const bool size_ok = params_.size() == expected ||
                       (has_optional_scale(family) && params_.size() == expected + 1);
  require(size_ok, family, "expected " + std::to_string(expected) + " parameters, got " +
                               std::to_string(params_.size()));
  for (double v : params_) require(std::isfinite(v), family, "parameters must be finite");
  const auto& p = params_;
  switch (family) {
    case Family::cburr:
      (void)CBurrParams(p[0], p[1], p[2], p[3], regime);
      break;
    case Family::burr:
      (void)BurrParams(p[0], p[1], p[2]);
      break;
    case Family::lomax:
      require(p[0] > 0 && p[1] > 0, family, "alpha and gamma must be positive");
      break;
    case Family::log_normal:
      require(p[1] > 0, family, "sigma must be positive");
      break;
    case Family::pareto:
      require(p[0] > 0 && p[1] > 0, family, "alpha and x_m must be positive");
      break;
    case Family::power_law:
      require(p[0] > 1.0, family, "alpha <= 1 is not normalizable");
      require(p[1] >= 1.0 && is_integer(p[1]), family, "k_min must be a positive integer");
      log_norm_ = std::log(hurwitz_zeta(p[0], p[1]));
      break;
    case Family::power_law_cutoff:
      require(p[1] > 0, family, "lambda must be positive");
      require(p[2] >= 1.0 && is_integer(p[2]), family, "k_min must be a positive integer");
      log_norm_ = std::log(power_law_cutoff_normalizer(p[0], p[1], p[2]));
      break;
    case Family::poisson:
      require(p[0] > 0, family, "mu must be positive");
      break;
    case Family::exponentiated_burr:
    case Family::burr_mo:
      for (double v : p) require(v > 0, family, "parameters must be positive");
      break;
  }
}

double ModelSpec::scale() const {
  if (has_optional_scale(family_) && params_.size() == 4) return params_[3];
  return 1.0;
}

CBurrParams ModelSpec::cburr() const {
  if (family_ != Family::cburr) throw DomainError("model is not cburr");
  return {params_[0], params_[1], params_[2], params_[3], regime_};
}

BurrParams ModelSpec::burr() const {
  if (family_ == Family::burr || family_ == Family::cburr) {
    return {params_[0], params_[1], params_[2]};
  }
  throw DomainError("model is not burr");
}

void ModelSpec::check_support(double y) const {
  if (discrete()) {
    require(is_integer(y) && y >= 0.0, family_,
            "support is the nonnegative integers, got " + std::to_string(y));
  } else {
    require(y > 0.0 && !std::isnan(y), family_,
            "support is y > 0, got " + std::to_string(y));
  }
}

double ModelSpec::logpdf(double y) const {
  check_support(y);
  const auto& p = params_;
  switch (family_) {
    case Family::cburr:
      return cburr_logpdf(cburr(), y);
    case Family::burr:
      return burr_logpdf(burr(), y);
    case Family::lomax:
      return std::log(p[0] / p[1]) - (p[0] + 1.0) * std::log1p(y / p[1]);
    case Family::log_normal: {
      const double z = (std::log(y) - p[0]) / p[1];
      return -0.5 * z * z - std::log(y * p[1]) - 0.5 * std::log(2.0 * M_PI);
    }
    case Family::pareto:
      if (y < p[1]) return -kInf;
      return std::log(p[0]) + p[0] * std::log(p[1]) - (p[0] + 1.0) * std::log(y);
    case Family::power_law:
      if (y < p[1]) return -kInf;
      return -p[0] * std::log(y) - log_norm_;
    case Family::power_law_cutoff:
      if (y < p[2]) return -kInf;
      return -p[0] * std::log(y) - p[1] * y - log_norm_;
    case Family::poisson:
      return log_poisson_pmf(p[0], y);
    case Family::exponentiated_burr: {
      const double s = scale();
      const double z = y / s;
      const double t = p[0] * std::log(z);
      const double L = softplus(t);
      // log(1 - exp(-theta L)); L underflows for very negative t
      const double log_cdf = t < -600.0 ? std::log(p[2]) + t : log_minus_expm1(-p[2] * L);
      return std::log(p[0] * p[1] * p[2] / s) + (p[0] - 1.0) * std::log(z) +
             (p[1] - 1.0) * log_cdf - (p[2] + 1.0) * L;
    }
    case Family::burr_mo: {
      const double s = scale();
      const double z = y / s;
      const double L = softplus(p[1] * std::log(z));
      const double q = std::exp(-p[2] * L);
      return std::log(p[0] * p[1] * p[2] / s) + (p[1] - 1.0) * std::log(z) -
             (p[2] + 1.0) * L - 2.0 * std::log1p(-(1.0 - p[0]) * q);
    }
  }
  return -kInf;
}

double ModelSpec::pdf(double y) const {
  switch (family_) {
    case Family::cburr:
      check_support(y);
      return cburr_pdf(cburr(), y);
    case Family::burr:
      check_support(y);
      return burr_pdf(burr(), y);
    default:
      return std::exp(logpdf(y));
  }
}

double ModelSpec::cdf(double y) const {
  const auto& p = params_;
  if (discrete()) {
    if (y < 0.0) return 0.0;
    const double k = std::floor(y);
    switch (family_) {
      case Family::poisson:
        return boost::math::gamma_q(k + 1.0, p[0]);
      case Family::power_law:
        if (k < p[1]) return 0.0;
        return -std::expm1(std::log(hurwitz_zeta(p[0], k + 1.0)) - log_norm_);
      case Family::power_law_cutoff: {
        if (k < p[2]) return 0.0;
        double sum = 0.0;
        for (double j = p[2]; j <= k; j += 1.0) sum += std::exp(logpdf(j));
        return std::min(sum, 1.0);
      }
      default:
        break;
    }
  }
  if (!(y > 0.0)) return 0.0;
  if (std::isinf(y)) return 1.0;
  switch (family_) {
    case Family::cburr:
      return cburr_cdf(cburr(), y);
    case Family::burr:
      return burr_cdf(burr(), y);
    case Family::lomax:
      return -std::expm1(-p[0] * std::log1p(y / p[1]));
    case Family::log_normal:
      return 0.5 * boost::math::erfc(-(std::log(y) - p[0]) / (p[1] * M_SQRT2));
    case Family::pareto:
      if (y <= p[1]) return 0.0;
      return -std::expm1(p[0] * (std::log(p[1]) - std::log(y)));
    case Family::exponentiated_burr: {
      const double L = softplus(p[0] * std::log(y / scale()));
      return std::exp(p[1] * log_minus_expm1(-p[2] * L));
    }
    case Family::burr_mo: {
      const double L = softplus(p[1] * std::log(y / scale()));
      const double q = std::exp(-p[2] * L);
      return -std::expm1(-p[2] * L) / (1.0 - (1.0 - p[0]) * q);
    }
    default:
      break;
  }
  return 0.0;
}

double ModelSpec::quantile(double u) const {
  require(!discrete(), family_, "quantile is defined for continuous families only");
  require(u > 0.0 && u < 1.0, family_, "quantile argument must be in (0, 1)");
  const auto& p = params_;
  switch (family_) {
    case Family::cburr:
      return cburr_quantile(cburr(), u);
    case Family::burr:
      return burr_quantile(burr(), u);
    case Family::lomax:
      return p[1] * std::exp(log_expm1(-std::log1p(-u) / p[0]));
    case Family::log_normal:
      return std::exp(p[0] - p[1] * M_SQRT2 * boost::math::erfc_inv(2.0 * u));
    case Family::pareto:
      return p[1] * std::exp(-std::log1p(-u) / p[0]);
    case Family::exponentiated_burr: {
      // F = (1 - q)^beta with q = (1 + z^a)^{-theta}
      const double q = -std::expm1(std::log(u) / p[1]);
      const double L = -std::log(q) / p[2];
      return scale() * std::exp(log_expm1(L) / p[0]);
    }
    case Family::burr_mo: {
      const double q = (1.0 - u) / (1.0 - u + u * p[0]);
      const double L = -std::log(q) / p[2];
      return scale() * std::exp(log_expm1(L) / p[1]);
    }
    default:
      break;
  }
  throw DomainError("quantile not available");
}

double ModelSpec::draw(Rng& rng) const {
  const auto& p = params_;
  switch (family_) {
    case Family::cburr:
      return cburr_draw(cburr(), rng);
    case Family::poisson:
      return static_cast<double>(rng.poisson(p[0]));
    case Family::power_law: {
      // Smallest k with zeta(alpha, k + 1) <= (1 - u) zeta(alpha, k_min).
      const double log_target = std::log1p(-rng.uniform()) + log_norm_;
      auto done = [&](double k) { return std::log(hurwitz_zeta(p[0], k + 1.0)) <= log_target; };
      double lo = p[1];
      if (done(lo)) return lo;
      double hi = lo + 1.0;
      while (!done(hi)) {
        lo = hi;
        hi = std::floor(hi * 2.0);
        if (hi > 1e15) return hi;
      }
      while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (done(mid)) hi = mid; else lo = mid;
      }
      return hi;
    }
    case Family::power_law_cutoff: {
      const double u = rng.uniform();
      double cum = 0.0;
      double k = p[2];
      for (;; k += 1.0) {
        cum += std::exp(-p[0] * std::log(k) - p[1] * k - log_norm_);
        if (cum >= u || k - p[2] > 1e9) break;
      }
      return k;
    }
    default:
      return quantile(rng.uniform());
  }
}

std::vector<double> ModelSpec::sample(std::size_t n, Rng& rng) const {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(rng));
  return out;
}

double ModelSpec::degree_cdf(long long k) const {
  if (discrete()) return cdf(static_cast<double>(k));
  if (k < 0) return 0.0;
  return cdf(static_cast<double>(k) + 0.5);
}

double ModelSpec::degree_survival(long long k) const {
  if (k <= 0 && !discrete()) return 1.0;
  if (family_ == Family::cburr) return cburr_survival(cburr(), static_cast<double>(k) - 0.5);
  return std::max(1.0 - degree_cdf(k - 1), 0.0);
}

double ModelSpec::degree_probability(long long k) const {
  if (discrete()) {
    if (k < 0) return 0.0;
    return pdf(static_cast<double>(k));
  }
  if (k < 0) return 0.0;
  const double hi = static_cast<double>(k) + 0.5;
  const double lo = std::max(static_cast<double>(k) - 0.5, 0.0);
  if (family_ == Family::cburr) {
    // Difference of survivals keeps precision in the upper tail.
    const CBurrParams cp = cburr();
    const double s_lo = lo > 0.0 ? cburr_survival(cp, lo) : 1.0;
    return std::max(s_lo - cburr_survival(cp, hi), 0.0);
  }
  return std::max(cdf(hi) - cdf(lo), 0.0);
}

double competitor_pdf(const ModelSpec& spec, double y) { return spec.pdf(y); }
double competitor_cdf(const ModelSpec& spec, double y) { return spec.cdf(y); }
double competitor_logpdf(const ModelSpec& spec, double y) { return spec.logpdf(y); }

}  // namespace cburr
