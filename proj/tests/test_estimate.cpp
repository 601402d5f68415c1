#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "cburr/burr.hpp"
#include "cburr/error.hpp"
#include "cburr/estimate.hpp"
#include "cburr/gof.hpp"
#include "cburr/rng.hpp"
#include "support.hpp"

using namespace cburr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ThetaVector kDmela{0.6978, 0.7234, 5.5685, 50.877};

WeightedSample draw(const CBurrParams& p, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto xs = cburr_sample(p, n, rng);
  return WeightedSample::from_values(xs);
}

// Central differences on theta, step scaled to each coordinate.
std::array<double, 4> fd_score(const ThetaVector& t, const WeightedSample& s) {
  std::array<double, 4> g{};
  const auto base = t.as_array();
  for (int i = 0; i < 4; ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(base[i]));
    auto at = [&](double v) {
      auto a = base;
      a[i] = v;
      return cburr_loglik(ThetaVector{a[0], a[1], a[2], a[3]}, s);
    };
    g[i] = (at(base[i] + h) - at(base[i] - h)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("log-likelihood example and weighting") {
  const WeightedSample one = WeightedSample::from_values(std::vector<double>{1.0});
  CHECK_THAT(cburr_negloglik(ThetaVector{0, 1, 1, 1}, one), WithinAbs(1.38629436, 1e-8));
  CHECK_THAT(cburr_loglik(ThetaVector{0, 1, 1, 1}, one), WithinAbs(std::log(0.25), 1e-14));

  const std::vector<double> raw{1, 1, 2, 3, 3, 3, 7.5, 12};
  const ThetaVector t{0.4, 1.3, 0.9, 2.0};
  double expanded = 0.0;
  for (double y : raw) expanded += cburr_logpdf(t.params(), y);
  CHECK_THAT(cburr_loglik(t, WeightedSample::from_values(raw)), WithinRel(expanded, 1e-13));
  CHECK_THAT(model_loglik(ModelSpec(Family::cburr, {2.0, 0.9, 1.3, 0.4}),
                          WeightedSample::from_values(raw)),
             WithinRel(expanded, 1e-13));
}

TEST_CASE("non-finite terms name the offending value") {
  WeightedSample s;
  s.values = {0.0, 2.0};
  s.weights = {1.0, 1.0};
  CHECK_THROWS_AS(cburr_loglik(ThetaVector{0, 1, 1, 1}, s), Error);
  try {
    cburr_loglik(ThetaVector{0, 1, 1, 1}, s);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find('0') != std::string::npos);
  }
}

TEST_CASE("analytic score matches central differences") {
  Rng rng(51);
  const WeightedSample s = draw(kDmela.params(), 500, 7);
  for (int i = 0; i < 10; ++i) {
    const ThetaVector t{-0.8 + 5.0 * rng.uniform(), 0.4 + 2.0 * rng.uniform(),
                        0.5 + 6.0 * rng.uniform(), 5.0 + 80.0 * rng.uniform()};
    const auto a = cburr_score(t, s);
    const auto f = fd_score(t, s);
    for (int k = 0; k < 4; ++k) {
      INFO("point " << i << " coordinate " << k);
      CHECK(std::abs(a[k] - f[k]) <= 1e-4 * std::max(1.0, std::abs(f[k])));
    }
  }
}

TEST_CASE("score at lambda = 0") {
  const WeightedSample s = draw(CBurrParams(3, 2, 1.5, 0), 300, 8);
  const ThetaVector t{0.0, 1.5, 2.0, 3.0};
  double expected = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double fb = burr_survival(BurrParams(3, 2, 1.5), s.values[i]);
    expected += s.weights[i] * (2.0 * fb - 1.0);
  }
  CHECK_THAT(cburr_score(t, s)[0], WithinRel(expected, 1e-12));
}

TEST_CASE("fit reaches a stationary point that beats its neighbours") {
  const WeightedSample s = draw(CBurrParams(10, 2, 1.2, 1.5), 3000, 9);
  FitConfig cfg;
  cfg.tol = 1e-9;
  const FitResult fit = fit_cburr(s, cfg);
  REQUIRE(fit.converged);
  CHECK(fit.active_bounds.empty());
  const ThetaVector t = fit.theta();
  const auto g = cburr_score(t, s);
  const double scale = 1.0 + std::abs(fit.loglik);
  CHECK(std::abs(g[0]) * 1.0 <= 1e-4 * scale);
  CHECK(std::abs(g[1]) * t.c <= 1e-4 * scale);
  CHECK(std::abs(g[2]) * t.alpha <= 1e-4 * scale);
  CHECK(std::abs(g[3]) * t.gamma <= 1e-4 * scale);
  ThetaVector up = t, down = t;
  up.lambda += 0.01;
  down.lambda -= 0.01;
  CHECK(cburr_loglik(up, s) < fit.loglik);
  CHECK(cburr_loglik(down, s) < fit.loglik);
  CHECK_THAT(cburr_loglik(t, s), WithinAbs(fit.loglik, 1e-9 * scale));
}

TEST_CASE("fit history is monotone and results are deterministic") {
  const WeightedSample s = draw(CBurrParams(5, 1.5, 1.0, 0.5), 1000, 10);
  const FitResult a = fit_cburr(s);
  const FitResult b = fit_cburr(s);
  REQUIRE(!a.history.empty());
  for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i] >= a.history[i - 1]);
  CHECK(a.params == b.params);
  CHECK(a.loglik == b.loglik);
  CHECK(a.iterations == b.iterations);
  CHECK(a.starts_used == 6);
  CHECK(a.start_diagnostics.size() == 6);
}

TEST_CASE("small samples warn but still fit") {
  const WeightedSample s = WeightedSample::from_values(std::vector<double>{1, 2, 2, 3, 5});
  const FitResult fit = fit_cburr(s);
  bool warned = false;
  for (const auto& w : fit.warnings) warned |= w.find("sample size") != std::string::npos;
  CHECK(warned);
  CHECK(std::isfinite(fit.loglik));
}

TEST_CASE("nested dominance: compounded fit never trails Burr") {
  const WeightedSample s = draw(CBurrParams(2, 1.3, 1.1, 1.0), 5000, 11);
  const FitResult burr = fit_burr(s);
  const FitResult cb = fit_cburr(s);
  CHECK(cb.loglik >= burr.loglik - 1e-6);
  CHECK(burr.params.size() == 3);
  CHECK(burr.theta().lambda == 0.0);
}

TEST_CASE("likelihood dominance at the reference parameters") {
  const WeightedSample s = draw(kDmela.params(), 10000, 12);
  const FitResult fit = fit_cburr(s);
  CHECK(fit.loglik >= cburr_loglik(kDmela, s) - 2.0);
}

TEST_CASE("Burr parameters are recovered at n = 1e5") {
  const CBurrParams truth(4.0, 2.5, 1.7, 0.0);
  const WeightedSample s = draw(truth, 100000, 13);
  const FitResult fit = fit_burr(s);
  const ThetaVector t = fit.theta();
  CHECK(oracle::rel_err(t.gamma, 4.0) <= 0.10);
  CHECK(oracle::rel_err(t.alpha, 2.5) <= 0.10);
  CHECK(oracle::rel_err(t.c, 1.7) <= 0.10);
}

TEST_CASE("closed-form competitor estimates") {
  std::vector<double> raw;
  for (int i = 0; i < 1000; ++i) raw.push_back(1 + i % 13);
  const WeightedSample s = WeightedSample::from_values(raw);
  const FitResult pois = fit_competitor(Family::poisson, s);
  CHECK_THAT(pois.params[0], WithinRel(s.mean(), 1e-14));

  const double e = std::numbers::e;
  const FitResult ln = fit_competitor(
      Family::log_normal, WeightedSample::from_values(std::vector<double>{1, e, e * e}));
  CHECK_THAT(ln.params[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(ln.params[1] * ln.params[1], WithinAbs(2.0 / 3.0, 1e-14));

  const FitResult par = fit_competitor(
      Family::pareto, WeightedSample::from_values(std::vector<double>{1, 2, 4}));
  CHECK_THAT(par.params[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(par.params[0], WithinRel(3.0 / (3.0 * std::log(2.0)), 1e-14));
}

TEST_CASE("power-law exponent recovered within 5% at n = 1e5") {
  const ModelSpec truth(Family::power_law, {2.5, 1.0});
  Rng rng(14);
  const WeightedSample s = WeightedSample::from_values(truth.sample(100000, rng));
  const FitResult fit = fit_competitor(Family::power_law, s);
  CHECK(oracle::rel_err(fit.params[0], 2.5) <= 0.05);
  CHECK(fit.params[1] == 1.0);
}

TEST_CASE("every competitor fits heavy-tailed integer data") {
  Rng rng(15);
  std::vector<double> raw;
  const CBurrParams p(5.0, 1.5, 1.2, 0.7);
  for (double y : cburr_sample(p, 2000, rng)) raw.push_back(std::max(1.0, std::floor(y + 0.5)));
  const WeightedSample s = WeightedSample::from_values(raw);
  for (Family f : all_families()) {
    INFO(family_name(f));
    const FitResult fit = fit_competitor(f, s);
    CHECK(std::isfinite(fit.loglik));
    CHECK(fit.params.size() == param_names(f).size());
    CHECK_NOTHROW(fit.model());
  }
}

TEST_CASE("interval likelihood on rounded data") {
  Rng rng(16);
  const CBurrParams truth(8.0, 1.4, 1.5, 0.6);
  std::vector<double> raw;
  while (raw.size() < 3000) {
    const double k = std::floor(cburr_draw(truth, rng) + 0.5);
    if (k >= 1) raw.push_back(k);
  }
  const WeightedSample s = WeightedSample::from_values(raw);
  FitConfig cfg;
  cfg.likelihood = Likelihood::interval;
  const FitResult fit = fit_cburr(s, cfg);
  CHECK(fit.likelihood == Likelihood::interval);
  CHECK(fit.converged);
  const ModelSpec true_model(Family::cburr, {8.0, 1.4, 1.5, 0.6});
  CHECK(fit.loglik >= model_interval_loglik(true_model, s) - 2.0);
  CHECK_THAT(model_interval_loglik(fit.model(), s), WithinAbs(fit.loglik, 1e-8));
  // hand check of one term: P(k = 1 | k >= 1) for the unit Burr is (0.6 - 1/3) / (2/3)
  const WeightedSample ones = WeightedSample::from_values(std::vector<double>{1.0});
  CHECK_THAT(model_interval_loglik(ModelSpec(Family::cburr, {1, 1, 1, 0}), ones),
             WithinAbs(std::log(0.4), 1e-14));
  CHECK(likelihood_from_string("interval") == Likelihood::interval);
  CHECK_THROWS_AS(likelihood_from_string("exact"), DomainError);
}
