#include "cburr/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cburr/error.hpp"
#include "cburr/numeric.hpp"
#include "cburr/rng.hpp"

namespace cburr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LoglikEval {
  double loglik = 0.0;
  std::array<double, 4> score{};  // d/dlambda, d/dc, d/dalpha, d/dgamma
  bool finite = true;
  double offending = 0.0;
};

LoglikEval evaluate_cburr(double lambda, double c, double alpha, double gamma,
                          const WeightedSample& sample, bool with_score) {
  LoglikEval out;
  const double log_gamma_scale = std::log(gamma);
  const double log_c_alpha = std::log(c) + std::log(alpha);
  double ll = 0.0;
  double d_lambda = 0.0, d_c = 0.0, d_alpha = 0.0, d_gamma = 0.0;
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const double y = sample.values[i];
    const double w = sample.weights[i];
    const double log_y = std::log(y);
    const double t = c * (log_y - log_gamma_scale);
    const double big_l = softplus(t);
    const double sig = logistic(t);
    const double fbar = std::exp(-alpha * big_l);
    const double fcdf = -std::expm1(-alpha * big_l);
    const double shift = 1.0 + lambda * fbar;
    const double term =
        log_c_alpha - log_y + t - (alpha + 1.0) * big_l + std::log(shift) - lambda * fcdf;
    if (!std::isfinite(term)) {
      out.finite = false;
      out.offending = y;
      out.loglik = -kInf;
      return out;
    }
    ll += w * term;
    if (with_score) {
      const double dl_dc = sig * t / c;
      const double dl_dgamma = -sig * c / gamma;
      const double k = lambda * (1.0 / shift + 1.0);
      d_lambda += w * (fbar / shift - fcdf);
      d_c += w * (1.0 / c + t / c - (alpha + 1.0) * dl_dc - k * alpha * fbar * dl_dc);
      d_alpha += w * (1.0 / alpha - big_l - k * big_l * fbar);
      d_gamma += w * (-c / gamma - (alpha + 1.0) * dl_dgamma - k * alpha * fbar * dl_dgamma);
    }
  }
  out.loglik = ll;
  out.score = {d_lambda, d_c, d_alpha, d_gamma};
  return out;
}

// Survival of the compounded model and its derivatives in
// (lambda, c, alpha, gamma) at a point y > 0.
struct SurvivalTerms {
  double s = 0.0;
  std::array<double, 4> ds{};
};

SurvivalTerms survival_terms(double lambda, double c, double alpha, double log_gamma,
                             double gamma, double y) {
  const double t = c * (std::log(y) - log_gamma);
  const double big_l = softplus(t);
  const double sig = logistic(t);
  const double fbar = std::exp(-alpha * big_l);
  const double fcdf = -std::expm1(-alpha * big_l);
  const double e = std::exp(-lambda * fcdf);
  SurvivalTerms out;
  out.s = fbar * e;
  const double ds_dfbar = e * (1.0 + lambda * fbar);
  out.ds[0] = -fcdf * out.s;
  out.ds[1] = ds_dfbar * (-alpha * fbar * sig * t / c);
  out.ds[2] = ds_dfbar * (-big_l * fbar);
  out.ds[3] = ds_dfbar * (alpha * fbar * sig * c / gamma);
  return out;
}

// Interval log-likelihood sum w log[(S(k - 1/2) - S(k + 1/2)) / S(1/2)] and
// its gradient in (lambda, c, alpha, gamma).
LoglikEval evaluate_cburr_interval(double lambda, double c, double alpha, double gamma,
                                   const WeightedSample& sample) {
  LoglikEval out;
  const double lg = std::log(gamma);
  const SurvivalTerms norm = survival_terms(lambda, c, alpha, lg, gamma, 0.5);
  if (!(norm.s > 0.0)) {
    out.finite = false;
    out.loglik = -kInf;
    return out;
  }
  const double n = sample.total();
  double ll = -n * std::log(norm.s);
  std::array<double, 4> g{};
  for (int j = 0; j < 4; ++j) g[j] = -n * norm.ds[j] / norm.s;
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const double k = sample.values[i];
    const double w = sample.weights[i];
    const SurvivalTerms lo = survival_terms(lambda, c, alpha, lg, gamma, k - 0.5);
    const SurvivalTerms hi = survival_terms(lambda, c, alpha, lg, gamma, k + 0.5);
    const double p = lo.s - hi.s;
    if (!(p > 0.0) || !std::isfinite(p)) {
      out.finite = false;
      out.offending = k;
      out.loglik = -kInf;
      return out;
    }
    ll += w * std::log(p);
    for (int j = 0; j < 4; ++j) g[j] += w * (lo.ds[j] - hi.ds[j]) / p;
  }
  out.loglik = ll;
  out.score = g;
  return out;
}

void check_sample(const WeightedSample& sample) {
  if (sample.empty()) throw InsufficientDataError("empty sample");
  if (!(sample.min() > 0.0)) {
    throw DomainError("sample values must be positive, got " + std::to_string(sample.min()));
  }
}

// An optimization problem in unconstrained-ish coordinates z, with a box.
struct Problem {
  Family family;
  std::vector<std::string> names;
  Box box;
  std::vector<bool> log_coord;  // z_i = log(param_i) for these coordinates
  std::vector<int> param_index; // which ModelSpec slot each z coordinate fills
  std::vector<double> fixed;    // full ModelSpec parameter vector with fixed slots set
  Objective objective;
};

std::vector<double> z_to_params(const Problem& pr, std::span<const double> z) {
  std::vector<double> p = pr.fixed;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[pr.param_index[i]] = pr.log_coord[i] ? std::exp(z[i]) : z[i];
  }
  return p;
}

std::vector<double> params_to_z(const Problem& pr, const std::vector<double>& p) {
  std::vector<double> z(pr.param_index.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = p[pr.param_index[i]];
    z[i] = pr.log_coord[i] ? std::log(v) : v;
    z[i] = std::clamp(z[i], pr.box.lower[i], pr.box.upper[i]);
  }
  return z;
}

// Default start plus (starts - 1) log-uniform perturbations by factors in [1/4, 4].
std::vector<std::vector<double>> make_starts(const Problem& pr, const std::vector<double>& p0,
                                             const FitConfig& config) {
  std::vector<std::vector<double>> starts;
  starts.push_back(config.initial ? *config.initial : p0);
  for (int s = 1; s < config.starts; ++s) {
    Rng rng(config.seed, static_cast<std::uint64_t>(s));
    std::vector<double> p = p0;
    for (std::size_t i = 0; i < pr.param_index.size(); ++i) {
      const double factor = std::exp(std::log(4.0) * (2.0 * rng.uniform() - 1.0));
      p[pr.param_index[i]] *= factor;
    }
    starts.push_back(std::move(p));
  }
  return starts;
}

bool better(const StartDiagnostic& a, double a_grad, const StartDiagnostic& b, double b_grad) {
  const double tie = 1e-9 * (1.0 + std::abs(b.loglik));
  if (a.loglik > b.loglik + tie) return true;
  if (a.loglik < b.loglik - tie) return false;
  if (a_grad != b_grad) return a_grad < b_grad;
  return std::lexicographical_compare(a.params.begin(), a.params.end(), b.params.begin(),
                                      b.params.end());
}

FitResult solve(const Problem& pr, const std::vector<std::vector<double>>& starts,
                const FitConfig& config) {
  OptimOptions opt;
  opt.max_iter = config.max_iter;
  opt.grad_tol = config.tol;

  FitResult best;
  best.family = pr.family;
  best.regime = config.regime;
  best.likelihood = config.likelihood;
  best.param_names = param_names(pr.family, pr.fixed.size() > pr.names.size());
  bool have_best = false;
  double best_grad = kInf;
  StartDiagnostic best_diag;
  std::vector<std::string> failures;

  for (const auto& start : starts) {
    StartDiagnostic diag;
    diag.start = start;
    OptimResult r;
    try {
      r = minimize_box_bfgs(pr.objective, params_to_z(pr, start), pr.box, opt);
    } catch (const Error& e) {
      diag.message = e.what();
      failures.push_back(diag.message);
      best.start_diagnostics.push_back(diag);
      continue;
    }
    diag.params = z_to_params(pr, r.x);
    diag.loglik = -r.f;
    diag.converged = r.converged;
    diag.iterations = r.iterations;
    diag.message = r.message;
    best.start_diagnostics.push_back(diag);
    if (!std::isfinite(r.f)) {
      failures.push_back("start diverged: " + r.message);
      continue;
    }
    if (!have_best || better(diag, r.projected_grad_norm, best_diag, best_grad)) {
      best_diag = diag;
      have_best = true;
      best_grad = r.projected_grad_norm;
      best.params = diag.params;
      best.loglik = diag.loglik;
      best.iterations = r.iterations;
      best.gradient_norm = r.projected_grad_norm;
      best.converged = r.converged;
      best.message = r.message;
      best.history.clear();
      for (double f : r.history) best.history.push_back(-f);
      best.active_bounds.clear();
      for (int idx : r.active_bounds) best.active_bounds.push_back(pr.names[idx]);
    }
  }
  best.starts_used = static_cast<int>(starts.size());
  if (!have_best) {
    throw FitFailure(std::string(family_name(pr.family)) + ": all starts failed", failures);
  }
  if (!best.active_bounds.empty()) {
    std::string names;
    for (const auto& n : best.active_bounds) names += (names.empty() ? "" : ", ") + n;
    best.warnings.push_back("estimate on box boundary (KKT) for: " + names);
  }
  return best;
}

void add_size_warning(FitResult& r, const WeightedSample& sample) {
  const double n = sample.total();
  if (n < 10.0) {
    std::ostringstream os;
    os << "sample size n = " << n << " is below 10; estimates are unreliable";
    r.warnings.insert(r.warnings.begin(), os.str());
  }
}

Problem cburr_problem(const WeightedSample& sample, const FitConfig& config, bool fix_lambda) {
  const CBurrBox& b = config.box;
  const Regime regime = config.regime;
  Problem pr;
  if (fix_lambda) {
    pr.family = Family::burr;
    pr.names = {"gamma", "alpha", "c"};
    pr.param_index = {0, 1, 2};
    pr.log_coord = {true, true, true};
    pr.fixed = {1.0, 1.0, 1.0};
    pr.box.lower = {std::log(b.gamma_min), std::log(b.alpha_min), std::log(b.c_min)};
    pr.box.upper = {std::log(b.gamma_max), std::log(b.alpha_max), std::log(b.c_max)};
  } else {
    pr.family = Family::cburr;
    pr.names = {"gamma", "alpha", "c", "lambda"};
    pr.param_index = {0, 1, 2, 3};
    pr.log_coord = {true, true, true, false};
    pr.fixed = {1.0, 1.0, 1.0, 0.0};
    pr.box.lower = {std::log(b.gamma_min), std::log(b.alpha_min), std::log(b.c_min),
                    lambda_lower_bound(regime)};
    pr.box.upper = {std::log(b.gamma_max), std::log(b.alpha_max), std::log(b.c_max),
                    b.lambda_max};
  }
  const WeightedSample* s = &sample;
  pr.objective = [s, fix_lambda](std::span<const double> z, std::span<double> grad) {
    const double gamma = std::exp(z[0]);
    const double alpha = std::exp(z[1]);
    const double c = std::exp(z[2]);
    const double lambda = fix_lambda ? 0.0 : z[3];
    const LoglikEval e = evaluate_cburr(lambda, c, alpha, gamma, *s, true);
    if (!e.finite) return kInf;
    grad[0] = -e.score[3] * gamma;
    grad[1] = -e.score[2] * alpha;
    grad[2] = -e.score[1] * c;
    if (!fix_lambda) grad[3] = -e.score[0];
    return -e.loglik;
  };
  return pr;
}

// Numeric-gradient problem over a family's ModelSpec likelihood.
Problem numeric_problem(Family family, const WeightedSample& sample, std::vector<std::string> names,
                        std::vector<int> index, std::vector<bool> log_coord,
                        std::vector<double> fixed, Box box, Regime regime,
                        bool interval = false) {
  Problem pr;
  pr.family = family;
  pr.names = std::move(names);
  pr.param_index = std::move(index);
  pr.log_coord = std::move(log_coord);
  pr.fixed = std::move(fixed);
  pr.box = std::move(box);
  const WeightedSample* s = &sample;
  auto value = [s, family, regime, pr, interval](std::span<const double> z) {
    try {
      const ModelSpec m(family, z_to_params(pr, z), regime);
      const double ll = interval ? model_interval_loglik(m, *s) : model_loglik(m, *s);
      return std::isfinite(ll) ? -ll : kInf;
    } catch (const Error&) {
      return kInf;
    }
  };
  const Box bx = pr.box;
  pr.objective = [value, bx](std::span<const double> z, std::span<double> grad) {
    const double f = value(z);
    if (!std::isfinite(f)) return f;
    std::vector<double> zp(z.begin(), z.end());
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
      const double orig = zp[i];
      const bool can_up = orig + h <= bx.upper[i];
      const bool can_down = orig - h >= bx.lower[i];
      double fp = f, fm = f, width = 0.0;
      if (can_up) { zp[i] = orig + h; fp = value(zp); width += h; }
      if (can_down) { zp[i] = orig - h; fm = value(zp); width += h; }
      zp[i] = orig;
      if (!std::isfinite(fp) || !std::isfinite(fm) || width == 0.0) {
        grad[i] = 0.0;
        continue;
      }
      grad[i] = (fp - fm) / width;
    }
    return f;
  };
  return pr;
}

FitResult closed_form(Family family, std::vector<double> params, const WeightedSample& sample,
                      const FitConfig& config) {
  FitResult r;
  r.family = family;
  r.param_names = param_names(family);
  r.params = std::move(params);
  r.regime = config.regime;
  r.loglik = model_loglik(r.model(), sample);
  r.converged = true;
  r.starts_used = 0;
  r.message = "closed form";
  r.history = {r.loglik};
  return r;
}

void require_integer_data(Family family, const WeightedSample& sample, double min_value) {
  if (!sample.all_integer() || sample.min() < min_value) {
    std::ostringstream os;
    os << family_name(family) << " needs integer data >= " << min_value;
    throw DomainError(os.str());
  }
}

FitResult fit_competitor_impl(Family family, const WeightedSample& sample,
                              const FitConfig& config);

// Interval-likelihood fit for a continuous family. Starts: the default layout
// start, its perturbations, and the continuous-likelihood estimate.
FitResult fit_interval(Family family, const WeightedSample& sample, const FitConfig& config) {
  require_integer_data(family, sample, 1.0);
  const CBurrBox& b = config.box;
  const double lg = std::log(1e-6);
  std::vector<std::string> names = param_names(family);
  std::vector<int> index;
  std::vector<bool> log_coord;
  std::vector<double> p0;
  Box box;
  switch (family) {
    case Family::cburr:
    case Family::burr:
      index = {0, 1, 2};
      log_coord = {true, true, true};
      p0 = {1.0, 1.0, 0.5};
      box = Box{{std::log(b.gamma_min), std::log(b.alpha_min), std::log(b.c_min)},
                {std::log(b.gamma_max), std::log(b.alpha_max), std::log(b.c_max)}};
      if (family == Family::cburr) {
        index.push_back(3);
        log_coord.push_back(false);
        p0.push_back(1.5);
        box.lower.push_back(lambda_lower_bound(config.regime));
        box.upper.push_back(b.lambda_max);
      }
      break;
    case Family::lomax:
      index = {0, 1};
      log_coord = {true, true};
      p0 = {1.0, sample.median()};
      box = Box{{lg, lg}, {std::log(1e3), std::log(1e6)}};
      break;
    case Family::log_normal: {
      index = {0, 1};
      log_coord = {false, true};
      double mu = 0.0;
      for (std::size_t i = 0; i < sample.values.size(); ++i) {
        mu += sample.weights[i] * std::log(sample.values[i]);
      }
      p0 = {mu / sample.total(), 1.0};
      box = Box{{-50.0, lg}, {50.0, std::log(1e3)}};
      break;
    }
    case Family::pareto:
      index = {0};
      log_coord = {true};
      p0 = {1.0, sample.min() - 0.5};
      box = Box{{lg}, {std::log(1e3)}};
      break;
    case Family::exponentiated_burr:
    case Family::burr_mo:
      index = {0, 1, 2};
      log_coord = {true, true, true};
      p0 = {1.0, 1.0, 1.0};
      box = Box{{lg, lg, lg}, {std::log(1e3), std::log(1e3), std::log(1e3)}};
      if (config.free_scale) {
        names.emplace_back("scale");
        index.push_back(3);
        log_coord.push_back(true);
        p0.push_back(sample.median());
        box.lower.push_back(lg);
        box.upper.push_back(std::log(1e6));
      }
      break;
    default:
      throw DomainError("interval likelihood applies to continuous families only");
  }
  std::vector<std::string> free_names;
  for (int i : index) free_names.push_back(names[static_cast<std::size_t>(i)]);
  Problem pr = numeric_problem(family, sample, free_names, index, log_coord, p0, box,
                               config.regime, true);
  if (family == Family::cburr || family == Family::burr) {
    const WeightedSample* s = &sample;
    const bool fixed_lambda = family == Family::burr;
    pr.objective = [s, fixed_lambda](std::span<const double> z, std::span<double> grad) {
      const double gamma = std::exp(z[0]);
      const double alpha = std::exp(z[1]);
      const double c = std::exp(z[2]);
      const double lambda = fixed_lambda ? 0.0 : z[3];
      const LoglikEval e = evaluate_cburr_interval(lambda, c, alpha, gamma, *s);
      if (!e.finite) return kInf;
      grad[0] = -e.score[3] * gamma;
      grad[1] = -e.score[2] * alpha;
      grad[2] = -e.score[1] * c;
      if (!fixed_lambda) grad[3] = -e.score[0];
      return -e.loglik;
    };
  }
  std::vector<std::vector<double>> starts = make_starts(pr, p0, config);
  std::vector<std::string> notes;
  if (!config.initial) {
    FitConfig cont = config;
    cont.likelihood = Likelihood::continuous;
    try {
      std::vector<double> p = fit_competitor_impl(family, sample, cont).params;
      if (family == Family::pareto) p[1] = p0[1];
      starts.push_back(std::move(p));
    } catch (const Error& e) {
      notes.push_back(std::string("continuous-likelihood start unavailable: ") + e.what());
    }
  }
  FitResult r = solve(pr, starts, config);
  r.param_names = param_names(family, config.free_scale && pr.fixed.size() == 4);
  for (auto& n : notes) r.warnings.push_back(std::move(n));
  add_size_warning(r, sample);
  return r;
}

}  // namespace

ThetaVector FitResult::theta() const {
  if (family == Family::cburr) return {params[3], params[2], params[1], params[0]};
  if (family == Family::burr) return {0.0, params[2], params[1], params[0]};
  throw DomainError("theta() is defined for cburr and burr fits only");
}

double cburr_loglik(const ThetaVector& theta, const WeightedSample& sample, Regime regime) {
  (void)theta.params(regime);
  check_sample(sample);
  const LoglikEval e =
      evaluate_cburr(theta.lambda, theta.c, theta.alpha, theta.gamma, sample, false);
  if (!e.finite) {
    throw NumericError("cburr log-likelihood is not finite at y = " +
                       std::to_string(e.offending));
  }
  return e.loglik;
}

double cburr_negloglik(const ThetaVector& theta, const WeightedSample& sample, Regime regime) {
  return -cburr_loglik(theta, sample, regime);
}

std::array<double, 4> cburr_score(const ThetaVector& theta, const WeightedSample& sample,
                                  Regime regime) {
  (void)theta.params(regime);
  check_sample(sample);
  const LoglikEval e =
      evaluate_cburr(theta.lambda, theta.c, theta.alpha, theta.gamma, sample, true);
  if (!e.finite) {
    throw NumericError("cburr score is not finite at y = " + std::to_string(e.offending));
  }
  return e.score;
}

const char* to_string(Likelihood likelihood) {
  return likelihood == Likelihood::continuous ? "continuous" : "interval";
}

Likelihood likelihood_from_string(std::string_view name) {
  if (name == "continuous") return Likelihood::continuous;
  if (name == "interval") return Likelihood::interval;
  throw DomainError("unknown likelihood '" + std::string(name) + "'");
}

double model_interval_loglik(const ModelSpec& model, const WeightedSample& sample) {
  require_integer_data(model.family(), sample, 1.0);
  const double norm = model.degree_survival(1);
  if (!(norm > 0.0)) return -kInf;
  const double log_norm = std::log(norm);
  double ll = 0.0;
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const double p = model.degree_probability(static_cast<long long>(sample.values[i]));
    ll += sample.weights[i] * (std::log(p) - log_norm);
  }
  return ll;
}

double model_loglik(const ModelSpec& model, const WeightedSample& sample) {
  if (model.family() == Family::cburr) {
    return cburr_loglik(ThetaVector::from(model.cburr()), sample, model.regime());
  }
  double ll = 0.0;
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    ll += sample.weights[i] * model.logpdf(sample.values[i]);
  }
  return ll;
}

FitResult fit_burr(const WeightedSample& sample, const FitConfig& config) {
  check_sample(sample);
  if (config.likelihood == Likelihood::interval) return fit_interval(Family::burr, sample, config);
  const Problem pr = cburr_problem(sample, config, true);
  FitConfig cfg = config;
  if (cfg.initial && cfg.initial->size() == 4) cfg.initial->resize(3);
  FitResult r = solve(pr, make_starts(pr, {1.0, 1.0, 0.5}, cfg), cfg);
  add_size_warning(r, sample);
  return r;
}

FitResult fit_cburr(const WeightedSample& sample, const FitConfig& config) {
  check_sample(sample);
  if (config.likelihood == Likelihood::interval) return fit_interval(Family::cburr, sample, config);
  const Problem pr = cburr_problem(sample, config, false);
  // Default start (gamma, alpha, c, lambda) = (1, 1, 0.5, 1.5).
  std::vector<std::vector<double>> starts = make_starts(pr, {1.0, 1.0, 0.5, 1.5}, config);
  std::vector<std::string> nested_warnings;
  if (config.nested_start) {
    FitConfig burr_cfg = config;
    burr_cfg.initial.reset();
    try {
      const FitResult burr = fit_burr(sample, burr_cfg);
      starts.push_back({burr.params[0], burr.params[1], burr.params[2], 0.0});
    } catch (const FitFailure& e) {
      nested_warnings.push_back(std::string("nested burr start unavailable: ") + e.what());
    }
  }
  FitResult r = solve(pr, starts, config);
  for (auto& w : nested_warnings) r.warnings.push_back(std::move(w));
  add_size_warning(r, sample);
  return r;
}

FitResult fit_competitor(Family family, const WeightedSample& sample, const FitConfig& config) {
  check_sample(sample);
  if (config.likelihood == Likelihood::interval && !is_discrete(family)) {
    return fit_interval(family, sample, config);
  }
  FitResult r = fit_competitor_impl(family, sample, config);
  r.likelihood = config.likelihood;
  return r;
}

namespace {

FitResult fit_competitor_impl(Family family, const WeightedSample& sample,
                              const FitConfig& config) {
  check_sample(sample);
  const double n = sample.total();
  FitResult r;
  switch (family) {
    case Family::cburr:
      return fit_cburr(sample, config);
    case Family::burr:
      return fit_burr(sample, config);
    case Family::poisson:
      require_integer_data(family, sample, 0.0);
      r = closed_form(family, {sample.mean()}, sample, config);
      break;
    case Family::log_normal: {
      double mu = 0.0;
      for (std::size_t i = 0; i < sample.values.size(); ++i) {
        mu += sample.weights[i] * std::log(sample.values[i]);
      }
      mu /= n;
      double var = 0.0;
      for (std::size_t i = 0; i < sample.values.size(); ++i) {
        const double d = std::log(sample.values[i]) - mu;
        var += sample.weights[i] * d * d;
      }
      var /= n;
      if (!(var > 0.0)) throw FitFailure("log-normal: zero variance of log values", {});
      r = closed_form(family, {mu, std::sqrt(var)}, sample, config);
      break;
    }
    case Family::pareto: {
      const double xm = sample.min();
      double s = 0.0;
      for (std::size_t i = 0; i < sample.values.size(); ++i) {
        s += sample.weights[i] * std::log(sample.values[i] / xm);
      }
      if (!(s > 0.0)) throw FitFailure("pareto: all values equal the minimum", {});
      r = closed_form(family, {n / s, xm}, sample, config);
      break;
    }
    case Family::power_law: {
      require_integer_data(family, sample, 1.0);
      const double kmin = sample.min();
      double s = 0.0;
      for (std::size_t i = 0; i < sample.values.size(); ++i) {
        s += sample.weights[i] * std::log(sample.values[i] / (kmin - 0.5));
      }
      const double alpha0 = std::clamp(1.0 + n / s, 1.0 + 1e-3, 49.0);
      Problem pr = numeric_problem(family, sample, {"alpha"}, {0}, {false}, {alpha0, kmin},
                                   Box{{1.0 + 1e-6}, {50.0}}, config.regime);
      FitConfig cfg = config;
      cfg.starts = 1;
      r = solve(pr, make_starts(pr, {alpha0, kmin}, cfg), cfg);
      break;
    }
    case Family::power_law_cutoff: {
      require_integer_data(family, sample, 1.0);
      const double kmin = sample.min();
      const std::vector<double> p0{1.5, 1.0 / sample.mean(), kmin};
      Problem pr = numeric_problem(family, sample, {"alpha", "lambda"}, {0, 1}, {false, true},
                                   p0, Box{{-5.0, std::log(1e-4)}, {20.0, std::log(20.0)}},
                                   config.regime);
      FitConfig cfg = config;
      cfg.starts = std::min(config.starts, 3);
      r = solve(pr, make_starts(pr, p0, cfg), cfg);
      break;
    }
    case Family::lomax: {
      const std::vector<double> p0{1.0, sample.median()};
      Problem pr = numeric_problem(family, sample, {"alpha", "gamma"}, {0, 1}, {true, true}, p0,
                                   Box{{std::log(1e-6), std::log(1e-6)},
                                       {std::log(1e3), std::log(1e6)}},
                                   config.regime);
      r = solve(pr, make_starts(pr, p0, config), config);
      break;
    }
    case Family::exponentiated_burr:
    case Family::burr_mo: {
      std::vector<std::string> names = param_names(family);
      std::vector<int> index{0, 1, 2};
      std::vector<double> p0{1.0, 1.0, 1.0};
      Box box{{std::log(1e-6), std::log(1e-6), std::log(1e-6)},
              {std::log(1e3), std::log(1e3), std::log(1e3)}};
      if (config.free_scale) {
        names.emplace_back("scale");
        index.push_back(3);
        p0.push_back(sample.median());
        box.lower.push_back(std::log(1e-6));
        box.upper.push_back(std::log(1e6));
      }
      Problem pr = numeric_problem(family, sample, names, index,
                                   std::vector<bool>(index.size(), true), p0, box,
                                   config.regime);
      r = solve(pr, make_starts(pr, p0, config), config);
      break;
    }
  }
  add_size_warning(r, sample);
  return r;
}

}  // namespace

}  // namespace cburr
