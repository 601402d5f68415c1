#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "cburr/burr.hpp"
#include "cburr/compound.hpp"
#include "cburr/error.hpp"
#include "cburr/rng.hpp"
#include "support.hpp"

using namespace cburr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const BurrBase kUnitBurr(BurrParams(1, 1, 1));

struct RandomBase {
  BurrParams params;
  double lambda;
};

RandomBase random_base(Rng& rng, double lambda_lo, double lambda_hi) {
  auto lu = [&](double lo, double hi) {
    return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
  };
  return {BurrParams(lu(0.2, 50), lu(0.3, 6), lu(0.3, 4)),
          lambda_lo + rng.uniform() * (lambda_hi - lambda_lo)};
}

std::vector<double> grid(const BurrParams& p, int n = 1000) {
  // quantile grid of the base, so every point has meaningful mass
  std::vector<double> ys;
  for (int i = 1; i <= n; ++i) ys.push_back(burr_quantile(p, (i - 0.5) / n));
  return ys;
}

}  // namespace

TEST_CASE("compounded survival examples") {
  CHECK_THAT(compounded_survival(kUnitBurr, 0.0, 1.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(compounded_survival(kUnitBurr, 1.0, 1.0), WithinAbs(0.30326533, 1e-8));
  CHECK(compounded_survival(kUnitBurr, 1.0, 0.0) == 1.0);
  const Logistic logistic;
  CHECK(compounded_survival(logistic, 0.7, -std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(compounded_cdf(kUnitBurr, 2.0, 0.0) == 0.0);
}

TEST_CASE("compounded density and hazard examples") {
  CHECK_THAT(compounded_pdf(kUnitBurr, 1.0, 1.0), WithinAbs(0.22744900, 1e-8));
  CHECK_THAT(compounded_pdf(kUnitBurr, 0.0, 1.0), WithinAbs(0.25, 1e-15));
  CHECK_THAT(compounded_hazard(kUnitBurr, 1.0, 1.0), WithinAbs(0.75, 1e-12));
  CHECK_THAT(compounded_hazard(kUnitBurr, 0.0, 2.0), WithinRel(kUnitBurr.hazard(2.0), 1e-15));
  // early range: r_G / r_F -> 1 + lambda
  CHECK_THAT(compounded_hazard(kUnitBurr, 0.8, 1e-9) / kUnitBurr.hazard(1e-9),
             WithinAbs(1.8, 1e-8));
  for (double lambda : {0.0, 0.5, 2.0, 7.0}) {
    for (double y : {0.01, 0.3, 1.0, 4.0, 50.0}) {
      CHECK(compounded_pdf(kUnitBurr, lambda, y) <= (1 + lambda) * kUnitBurr.pdf(y) * (1 + 1e-15));
    }
  }
}

TEST_CASE("hazard throws once the base survival is exhausted") {
  const Logistic logistic;
  CHECK_THROWS_AS(compounded_hazard(logistic, 1.0, std::numeric_limits<double>::infinity()),
                  SupportExhaustedError);
}

TEST_CASE("maximum variant examples") {
  CHECK(compounded_max_cdf(kUnitBurr, 1.3, std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THAT(compounded_max_cdf(kUnitBurr, 1.0, 1.0), WithinAbs(0.30326533, 1e-8));
  for (double z : {0.1, 1.0, 9.0}) {
    CHECK_THAT(compounded_max_cdf(kUnitBurr, 0.0, z), WithinAbs(kUnitBurr.cdf(z), 1e-15));
    CHECK_THAT(compounded_max_pdf(kUnitBurr, 0.0, z), WithinAbs(kUnitBurr.pdf(z), 1e-15));
  }
}

TEST_CASE("weight function examples") {
  CHECK_THAT(weight_function(kUnitBurr, 0.4, 0.0), WithinAbs(1.4, 1e-15));
  const Logistic logistic;
  CHECK_THAT(weight_function(logistic, 0.4, std::numeric_limits<double>::infinity()),
             WithinAbs(std::exp(-0.4), 1e-15));
  CHECK_THAT(weight_function(kUnitBurr, 1.0, 1.0), WithinAbs(1.5 * std::exp(-0.5), 1e-15));
  // printed to 7 decimals
  CHECK_THAT(weight_function(kUnitBurr, 1.0, 1.0), WithinAbs(0.90979600, 5e-8));
}

TEST_CASE("regime bounds are enforced") {
  CHECK_THROWS_AS(compounded_survival(kUnitBurr, -1.5, 1.0), DomainError);
  CHECK_NOTHROW(compounded_survival(kUnitBurr, -1.5, 1.0, Regime::paper_compat));
  CHECK_THROWS_AS(compounded_pdf(kUnitBurr, -2.5, 1.0, Regime::paper_compat), DomainError);
  CHECK_THROWS_AS(compounded_pdf(kUnitBurr, std::nan(""), 1.0), DomainError);
  CHECK(regime_from_string("paper-compat") == Regime::paper_compat);
  CHECK_THROWS_AS(regime_from_string("loose"), DomainError);
}

TEST_CASE("lambda = 0 reduces to the base") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const RandomBase rb = random_base(rng, 0, 0);
    const BurrBase base(rb.params);
    for (double y : grid(rb.params, 50)) {
      CHECK(std::abs(compounded_pdf(base, 0.0, y) - base.pdf(y)) <= 1e-12);
      CHECK(std::abs(compounded_survival(base, 0.0, y) - base.survival(y)) <= 1e-12);
    }
  }
}

TEST_CASE("hazard ratio identity") {
  Rng rng(12);
  for (int i = 0; i < 10; ++i) {
    const RandomBase rb = random_base(rng, -0.9, 10);
    const BurrBase base(rb.params);
    for (double y : grid(rb.params, 100)) {
      const double ratio = compounded_hazard(base, rb.lambda, y) / base.hazard(y);
      CHECK_THAT(ratio, WithinRel(1 + rb.lambda * base.survival(y), 1e-12));
    }
  }
}

TEST_CASE("hazard, survival and excess-risk bounds for positive lambda") {
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    const RandomBase rb = random_base(rng, 0.01, 8);
    const BurrBase base(rb.params);
    const double lam = rb.lambda;
    double prev_ratio = 1.0 + 1e-15;
    for (double y : grid(rb.params)) {
      const double rF = base.hazard(y), rG = compounded_hazard(base, lam, y);
      CHECK(rF <= rG * (1 + 1e-14));
      CHECK(rG <= (1 + lam) * rF * (1 + 1e-14));
      const double Fb = base.survival(y), Gb = compounded_survival(base, lam, y);
      CHECK(std::pow(Fb, 1 + lam) <= Gb * (1 + 1e-13));
      CHECK(Gb <= Fb * (1 + 1e-15));
      const double excess = compounded_cdf(base, lam, y) - base.cdf(y);
      CHECK(excess >= -1e-15);
      CHECK(excess <= std::expm1(lam));
      const double ratio = Gb / Fb;
      CHECK(ratio <= prev_ratio * (1 + 1e-14));
      prev_ratio = ratio;
      const double w = weight_function(base, lam, y);
      CHECK(w >= std::exp(-lam) * (1 - 1e-15));
      CHECK(w <= (1 + lam) * (1 + 1e-15));
    }
  }
}

TEST_CASE("symmetric base: density of -Y equals the maximum variant") {
  Rng rng(14);
  for (int i = 0; i < 10; ++i) {
    const Logistic base(rng.uniform() * 4 - 2, 0.2 + 3 * rng.uniform());
    const double lam = 0.01 + 8 * rng.uniform();
    // location must be 0 for reflection symmetry about the origin
    const Logistic centred(0.0, 0.2 + 3 * rng.uniform());
    for (int k = 0; k < 1000; ++k) {
      const double y = -20 + 40 * (k + 0.5) / 1000;
      CHECK_THAT(compounded_pdf(centred, lam, -y),
                 WithinAbs(compounded_max_pdf(centred, lam, y), 1e-10));
      // shifted base reflects about its location
      const double m = base.quantile(0.5);
      CHECK_THAT(compounded_pdf(base, lam, 2 * m - y),
                 WithinAbs(compounded_max_pdf(base, lam, y), 1e-10));
    }
  }
}

TEST_CASE("generative sampler matches the analytic survival") {
  Rng rng(2024);
  const auto draws = sample_compounded_min(kUnitBurr, 1.0, 100000, rng);
  const double d = oracle::ks_distance(draws, [](double y) {
    return compounded_cdf(kUnitBurr, 1.0, y);
  });
  CHECK(d <= 0.0061);

  Rng rng0(5);
  const auto base_draws = sample_compounded_min(kUnitBurr, 0.0, 1000, rng0);
  CHECK(oracle::ks_distance(base_draws, [](double y) { return kUnitBurr.cdf(y); }) <=
        oracle::dkw_bound(1000));
}

TEST_CASE("generative sampler is deterministic and rejects negative lambda") {
  Rng a(99), b(99);
  const auto x = sample_compounded_min(kUnitBurr, 1.0, 5, a);
  const auto y = sample_compounded_min(kUnitBurr, 1.0, 5, b);
  REQUIRE(x.size() == 5);
  CHECK(std::memcmp(x.data(), y.data(), 5 * sizeof(double)) == 0);
  Rng c(1);
  CHECK_THROWS_AS(sample_compounded_min(kUnitBurr, -0.5, 5, c), GenerativeUnsupportedError);
}
