#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cburr/compound.hpp"
#include "cburr/models.hpp"
#include "cburr/optimizer.hpp"
#include "cburr/sample.hpp"

namespace cburr {

/// Theta = (lambda, c, alpha, gamma): the shift followed by the Burr
/// parameters beta = (c, alpha, gamma).
struct ThetaVector {
  double lambda = 0.0;
  double c = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;

  std::array<double, 4> as_array() const { return {lambda, c, alpha, gamma}; }
  CBurrParams params(Regime regime = Regime::validity) const {
    return {gamma, alpha, c, lambda, regime};
  }
  static ThetaVector from(const CBurrParams& p) {
    return {p.lambda(), p.c(), p.alpha(), p.gamma()};
  }
};

/// Box constraints for the compounded Burr fit; lambda's lower end comes from
/// the regime.
struct CBurrBox {
  double gamma_min = 1e-6, gamma_max = 1e6;
  double alpha_min = 1e-6, alpha_max = 1e3;
  double c_min = 1e-6, c_max = 1e3;
  double lambda_max = 1e3;
};

/// continuous: degrees enter as continuous observations (density terms).
/// interval: each degree k contributes log P(round(Y) = k | round(Y) >= 1).
enum class Likelihood { continuous, interval };

const char* to_string(Likelihood likelihood);
Likelihood likelihood_from_string(std::string_view name);

struct FitConfig {
  int starts = 5;
  Regime regime = Regime::validity;
  double tol = 1e-6;
  int max_iter = 500;
  std::uint64_t seed = 1;
  CBurrBox box{};
  /// Also start the compounded fit from the fitted Burr model at lambda = 0.
  bool nested_start = true;
  /// Replaces the default first start (layout as in ModelSpec).
  std::optional<std::vector<double>> initial;
  /// Fit a scale for exponentiated Burr and Burr-MO instead of fixing it at 1.
  bool free_scale = false;
  Likelihood likelihood = Likelihood::continuous;
};

struct StartDiagnostic {
  std::vector<double> start;
  std::vector<double> params;
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

struct FitResult {
  Family family = Family::cburr;
  std::vector<std::string> param_names;
  std::vector<double> params;  // ModelSpec layout
  double loglik = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  Regime regime = Regime::validity;
  Likelihood likelihood = Likelihood::continuous;
  int starts_used = 0;
  std::vector<std::string> active_bounds;  // parameters held at a box bound
  std::string message;
  /// Log-likelihood after each accepted iteration of the winning start.
  std::vector<double> history;
  std::vector<StartDiagnostic> start_diagnostics;
  std::vector<std::string> warnings;

  ModelSpec model() const { return {family, params, regime}; }
  /// Only for cburr and burr fits (lambda = 0 for burr).
  ThetaVector theta() const;
};

/// Log-likelihood of the compounded Burr model, weighted by the sample counts.
/// Throws NumericError naming the first value with a non-finite term.
double cburr_loglik(const ThetaVector& theta, const WeightedSample& sample,
                    Regime regime = Regime::validity);
double cburr_negloglik(const ThetaVector& theta, const WeightedSample& sample,
                       Regime regime = Regime::validity);

/// Analytic score (d/dlambda, d/dc, d/dalpha, d/dgamma) of the log-likelihood.
std::array<double, 4> cburr_score(const ThetaVector& theta, const WeightedSample& sample,
                                  Regime regime = Regime::validity);

/// Log-likelihood of any family (sum of weighted log densities / masses).
double model_loglik(const ModelSpec& model, const WeightedSample& sample);

/// Sum of weighted log P(round(Y) = k | round(Y) >= 1) over integer data >= 1.
double model_interval_loglik(const ModelSpec& model, const WeightedSample& sample);

/// Multi-start bound-constrained quasi-Newton maximum likelihood.
FitResult fit_cburr(const WeightedSample& sample, const FitConfig& config = {});
/// Burr XII fit: the compounded likelihood with lambda held at 0.
FitResult fit_burr(const WeightedSample& sample, const FitConfig& config = {});
/// Any family: closed form for poisson, log-normal and pareto; numeric otherwise.
FitResult fit_competitor(Family family, const WeightedSample& sample,
                         const FitConfig& config = {});

}  // namespace cburr
