#pragma once

#include <cstddef>
#include <vector>

#include "cburr/compound.hpp"
#include "cburr/rng.hpp"

namespace cburr {

/// Burr XII parameters: scale gamma, shapes alpha and c, all > 0.
class BurrParams {
 public:
  BurrParams(double gamma, double alpha, double c);

  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double c() const { return c_; }

 private:
  double gamma_;
  double alpha_;
  double c_;
};

/// Compounded Burr parameters (gamma, alpha, c, lambda). The lambda range is
/// checked against the regime at construction.
class CBurrParams {
 public:
  CBurrParams(double gamma, double alpha, double c, double lambda,
              Regime regime = Regime::validity);

  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double c() const { return c_; }
  double lambda() const { return lambda_; }
  Regime regime() const { return regime_; }
  BurrParams base() const { return {gamma_, alpha_, c_}; }

 private:
  double gamma_;
  double alpha_;
  double c_;
  double lambda_;
  Regime regime_;
};

/// log(1 + (y/gamma)^c) and the pieces the density and score need, computed
/// from t = c log(y/gamma) without forming (y/gamma)^c when it would overflow.
struct BurrKernel {
  double t;          // c * log(y / gamma)
  double log1p_u;    // log(1 + (y/gamma)^c)
  double u_over_1pu; // (y/gamma)^c / (1 + (y/gamma)^c)
  double survival;   // [1 + (y/gamma)^c]^{-alpha}
  double cdf;        // 1 - survival, accurate when small
};
BurrKernel burr_kernel(const BurrParams& p, double y);

double burr_cdf(const BurrParams& p, double y);
double burr_survival(const BurrParams& p, double y);
double burr_pdf(const BurrParams& p, double y);
double burr_logpdf(const BurrParams& p, double y);
double burr_hazard(const BurrParams& p, double y);
double burr_quantile(const BurrParams& p, double u);

/// Burr XII as a compounding base.
class BurrBase final : public BaseDistribution {
 public:
  explicit BurrBase(const BurrParams& p) : p_(p) {}

  double pdf(double y) const override;
  double cdf(double y) const override;
  double survival(double y) const override;
  double hazard(double y) const override;
  double quantile(double p) const override;
  double support_lower() const override { return 0.0; }
  double support_upper() const override;

 private:
  BurrParams p_;
};

double cburr_survival(const CBurrParams& p, double y);
double cburr_cdf(const CBurrParams& p, double y);
double cburr_pdf(const CBurrParams& p, double y);
double cburr_logpdf(const CBurrParams& p, double y);
double cburr_hazard(const CBurrParams& p, double y);

/// y with G(y) = u. Bracketed bisection on the Burr survival scale followed
/// by safeguarded Newton steps. Requires lambda > -1 (monotone cdf).
double cburr_quantile(const CBurrParams& p, double u);

/// lambda >= 0 uses the generative min-of-(1 + Poisson) sampler; lambda < 0
/// falls back to inverse-cdf sampling.
std::vector<double> cburr_sample(const CBurrParams& p, std::size_t n, Rng& rng);
std::vector<double> cburr_sample_inverse(const CBurrParams& p, std::size_t n, Rng& rng);
double cburr_draw(const CBurrParams& p, Rng& rng);

}  // namespace cburr
