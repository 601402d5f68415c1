#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cburr/rng.hpp"

namespace cburr {

/// Admissible range for the Poisson shift lambda.
///
/// `validity` keeps 1 + lambda * Fbar(y) > 0 everywhere (lambda > -1), so the
/// compounded object is a proper density. `paper_compat` widens the range to
/// lambda > -2, where the object is only a quasi-density; monotonicity and
/// sampling guarantees do not hold there.
enum class Regime { validity, paper_compat };

inline constexpr double kRegimeMargin = 1e-6;

/// Smallest admissible lambda (exclusive bound plus margin) for a regime.
double lambda_lower_bound(Regime regime);

/// Throws DomainError when lambda is outside the regime.
void check_lambda(double lambda, Regime regime);

const char* to_string(Regime regime);
Regime regime_from_string(std::string_view name);

/// Continuous base distribution F used by the compounding engine.
class BaseDistribution {
 public:
  virtual ~BaseDistribution() = default;

  virtual double pdf(double y) const = 0;
  virtual double cdf(double y) const = 0;
  /// 1 - F(y); override when a direct form is more accurate.
  virtual double survival(double y) const { return 1.0 - cdf(y); }
  /// f(y) / Fbar(y).
  virtual double hazard(double y) const { return pdf(y) / survival(y); }
  virtual double quantile(double p) const = 0;
  virtual double support_lower() const = 0;
  virtual double support_upper() const = 0;

  double sample(Rng& rng) const { return quantile(rng.uniform()); }
};

/// Logistic(location, scale): symmetric with closed-form cdf and quantile.
class Logistic final : public BaseDistribution {
 public:
  explicit Logistic(double location = 0.0, double scale = 1.0);

  double pdf(double y) const override;
  double cdf(double y) const override;
  double survival(double y) const override;
  double hazard(double y) const override;
  double quantile(double p) const override;
  double support_lower() const override;
  double support_upper() const override;

 private:
  double location_;
  double scale_;
};

// Min-compounding: Y = min(X_1..X_N), N - 1 ~ Poisson(lambda).

/// Gbar(y) = Fbar(y) exp(-lambda F(y)).
double compounded_survival(const BaseDistribution& base, double lambda, double y,
                           Regime regime = Regime::validity);
/// G(y) = 1 - Gbar(y).
double compounded_cdf(const BaseDistribution& base, double lambda, double y,
                      Regime regime = Regime::validity);
/// g(y) = f(y) (1 + lambda Fbar(y)) exp(-lambda F(y)).
double compounded_pdf(const BaseDistribution& base, double lambda, double y,
                      Regime regime = Regime::validity);
/// r_G(y) = r_F(y) (1 + lambda Fbar(y)). Throws SupportExhaustedError when Fbar(y) = 0.
double compounded_hazard(const BaseDistribution& base, double lambda, double y,
                         Regime regime = Regime::validity);
/// w(y; lambda) = (1 + lambda Fbar(y)) exp(-lambda F(y)), so that g = w f.
double weight_function(const BaseDistribution& base, double lambda, double y,
                       Regime regime = Regime::validity);

// Max-compounding: Z = max(X_1..X_N).

/// G_Z(z) = F(z) exp(-lambda Fbar(z)).
double compounded_max_cdf(const BaseDistribution& base, double lambda, double z,
                          Regime regime = Regime::validity);
/// g_Z(z) = f(z) (1 + lambda F(z)) exp(-lambda Fbar(z)).
double compounded_max_pdf(const BaseDistribution& base, double lambda, double z,
                          Regime regime = Regime::validity);
/// w_Z(z; lambda) = (1 + lambda F(z)) exp(-lambda Fbar(z)).
double max_weight_function(const BaseDistribution& base, double lambda, double z,
                           Regime regime = Regime::validity);

/// Generative sampler: each draw is the minimum of 1 + Poisson(lambda)
/// independent base draws. Requires lambda >= 0.
std::vector<double> sample_compounded_min(const BaseDistribution& base, double lambda,
                                          std::size_t n, Rng& rng);
double draw_compounded_min(const BaseDistribution& base, double lambda, Rng& rng);

}  // namespace cburr
