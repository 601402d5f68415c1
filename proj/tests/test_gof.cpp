#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "cburr/error.hpp"
#include "cburr/gof.hpp"
#include "cburr/rng.hpp"

using namespace cburr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

FrequencyTable table(std::vector<double> observed, std::vector<double> expected) {
  FrequencyTable t;
  for (std::size_t i = 0; i < observed.size(); ++i) t.degrees.push_back(static_cast<long long>(i + 1));
  t.n = std::accumulate(observed.begin(), observed.end(), 0.0);
  t.observed = std::move(observed);
  t.expected = std::move(expected);
  return t;
}

WeightedSample counts(const std::vector<std::pair<double, double>>& rows) {
  WeightedSample s;
  for (auto [k, c] : rows) {
    s.values.push_back(k);
    s.weights.push_back(c);
  }
  return s;
}

}  // namespace

TEST_CASE("expected frequencies") {
  CHECK_THAT(100.0 * ModelSpec(Family::poisson, {1.0}).degree_probability(0),
             WithinAbs(36.787944, 1e-6));
  const FrequencyTable t =
      expected_frequencies(ModelSpec(Family::cburr, {1, 1, 1, 0}), counts({{1, 1}, {4, 1}}));
  CHECK(t.n == 2.0);
  CHECK_THAT(t.expected[0], WithinAbs(0.5333333, 1e-7));
  CHECK_THAT(t.expected[0], WithinAbs(2.0 * (0.6 - 1.0 / 3.0), 1e-14));
  const FrequencyTable p = expected_frequencies(ModelSpec(Family::poisson, {2.0}),
                                                counts({{1, 10}, {3, 5}}));
  CHECK_THAT(p.expected[1], WithinRel(15.0 * 4.0 / 3.0 * std::exp(-2.0), 1e-14));
  CHECK_THROWS_AS(expected_frequencies(ModelSpec(Family::poisson, {2.0}), counts({{0, 3}})),
                  DomainError);
}

TEST_CASE("expected counts never exceed n and binned tables account for all mass") {
  Rng rng(61);
  const ModelSpec m(Family::cburr, {6.0, 1.3, 1.1, 0.8});
  std::vector<double> raw;
  for (long long k : simulate_degrees(m, 3000, rng)) raw.push_back(static_cast<double>(k));
  const WeightedSample s = WeightedSample::from_values(raw);
  const FrequencyTable t = expected_frequencies(m, s);
  double obs = 0, exp = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    obs += t.observed[i];
    exp += t.expected[i];
    CHECK(t.expected[i] >= 0.0);
  }
  CHECK(obs == 3000.0);
  CHECK(exp <= 3000.0 + 1e-6);
  const FrequencyTable b = binned_table(m, s);
  CHECK(b.open_ends);
  CHECK(b.degrees.front() == static_cast<long long>(s.min()));
  CHECK(b.degrees.back() == static_cast<long long>(s.max()));
  CHECK(static_cast<double>(b.size()) == s.max() - s.min() + 1);
  CHECK_THAT(std::accumulate(b.expected.begin(), b.expected.end(), 0.0), WithinRel(3000.0, 1e-9));
  CHECK_THAT(std::accumulate(b.observed.begin(), b.observed.end(), 0.0), WithinRel(3000.0, 1e-15));
}

TEST_CASE("RMSE, MAE and KLD fixtures") {
  const FrequencyTable t = table({10, 5, 2}, {8, 6, 3});
  CHECK_THAT(rmse(t), WithinAbs(std::sqrt(2.0), 1e-9));
  CHECK_THAT(mae(t), WithinAbs(4.0 / 3.0, 1e-9));
  CHECK(rmse(t) >= mae(t));
  const FrequencyTable same = table({3, 4, 5}, {3, 4, 5});
  CHECK(rmse(same) == 0.0);
  CHECK(mae(same) == 0.0);
  CHECK(kld(same) == 0.0);
  const FrequencyTable one = table({5}, {3});
  CHECK_THAT(rmse(one), WithinAbs(2.0, 1e-12));
  CHECK_THAT(mae(one), WithinAbs(2.0, 1e-12));
  const FrequencyTable k = table({50, 30, 20}, {40, 40, 20});
  CHECK_THAT(kld(k), WithinAbs(0.5 * std::log(1.25) + 0.3 * std::log(0.75), 1e-12));
  CHECK_THAT(kld(k), WithinAbs(0.0252672, 1e-7));
  const FrequencyTable zero = table({5, 5}, {10, 0});
  const KldResult kr = kld_detail(zero);
  CHECK(kr.floored == 1);
  CHECK(kr.value > 0);
  CHECK_THROWS_AS(rmse(FrequencyTable{}), InsufficientDataError);
}

TEST_CASE("RMSE dominates MAE on random tables") {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> o, e;
    const int m = 1 + static_cast<int>(rng.uniform() * 30);
    for (int j = 0; j < m; ++j) {
      o.push_back(std::floor(rng.uniform() * 50));
      e.push_back(50 * rng.uniform() + 1e-3);
    }
    const FrequencyTable t = table(o, e);
    CHECK(rmse(t) >= mae(t) * (1 - 1e-15));
    CHECK(kld(t) >= 0.0);
  }
}

TEST_CASE("Pearson statistic and pooling") {
  CHECK_THAT(pearson_statistic({60, 40}, {50, 50}), WithinAbs(4.0, 1e-12));
  CHECK(pearson_statistic({3, 4}, {3, 4}) == 0.0);
  const FrequencyTable t = table({5, 4, 3, 6}, {6, 3, 2, 7});
  const auto bins = pool_bins(t, 5.0);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].expected == 6.0);
  CHECK(bins[1].expected == 5.0);
  CHECK(bins[1].lo == 2);
  CHECK(bins[1].hi == 3);
  CHECK(bins[2].expected == 7.0);
  const ChiSquare cs = chi_square(t, 5.0, 0);
  CHECK(cs.bins.size() == 3);
  CHECK(cs.dof == 2);
  CHECK_THAT(cs.statistic, WithinAbs(1.0 / 6 + 4.0 / 5 + 1.0 / 7, 1e-12));
  CHECK_THROWS_AS(chi_square(table({60, 40}, {50, 50})), InsufficientDataError);
  // a short leftover on the left joins its neighbour
  const auto left = pool_bins(table({1, 1, 9, 9}, {1, 1, 9, 9}), 5.0);
  REQUIRE(left.size() == 2);
  CHECK(left[0].lo == 1);
  CHECK(left[0].hi == 3);
  CHECK(left[0].expected == 11.0);
}

TEST_CASE("pooling preserves totals") {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> o, e;
    const int m = 1 + static_cast<int>(rng.uniform() * 60);
    for (int j = 0; j < m; ++j) {
      o.push_back(std::floor(rng.uniform() * 20));
      e.push_back(12 * rng.uniform());
    }
    const FrequencyTable t = table(o, e);
    double so = 0, se = 0;
    for (const Bin& b : pool_bins(t, 5.0)) {
      so += b.observed;
      se += b.expected;
    }
    CHECK_THAT(so, WithinAbs(std::accumulate(o.begin(), o.end(), 0.0), 1e-9));
    CHECK_THAT(se, WithinAbs(std::accumulate(e.begin(), e.end(), 0.0), 1e-9));
  }
}

TEST_CASE("simulated degrees are rounded half up and at least one") {
  Rng rng(64);
  const auto ks = simulate_degrees(ModelSpec(Family::cburr, {0.3, 1.0, 1.0, 0.0}), 5000, rng);
  for (long long k : ks) REQUIRE(k >= 1);
  const auto pois = simulate_degrees(ModelSpec(Family::poisson, {0.5}), 1000, rng);
  for (long long k : pois) REQUIRE(k >= 1);
}

TEST_CASE("bootstrap p-value arithmetic") {
  // unit Burr: P(1 | >=1) = 0.4, P(2 | >=1) = 6/35, P(>=3 | >=1) = 3/7
  const ModelSpec unit(Family::cburr, {1, 1, 1, 0});
  const WeightedSample exact = counts({{1, 56}, {2, 24}, {3, 60}});
  const FrequencyTable bt = binned_table(unit, exact);
  CHECK_THAT(bt.expected[0], WithinAbs(56.0, 1e-12));
  CHECK_THAT(bt.expected[1], WithinAbs(24.0, 1e-12));
  CHECK_THAT(bt.expected[2], WithinAbs(60.0, 1e-12));
  BootstrapConfig cfg;
  cfg.replicates = 50;
  cfg.refit = false;
  cfg.threads = 2;
  const BootstrapResult r = bootstrap_chi_square_p(exact, unit, cfg);
  CHECK(r.observed < 1e-20);
  CHECK(r.p_value == 1.0);

  cfg.replicates = 1;
  const WeightedSample off = counts({{1, 30}, {2, 2}, {3, 3}});
  const BootstrapResult one = bootstrap_chi_square_p(off, unit, cfg);
  CHECK((one.p_value == 0.5 || one.p_value == 1.0));
  CHECK(one.replicates + one.failures == 1);
  cfg.replicates = 0;
  CHECK_THROWS_AS(bootstrap_chi_square_p(off, unit, cfg), DomainError);
}

TEST_CASE("bootstrap is deterministic across thread counts") {
  Rng rng(65);
  const ModelSpec m(Family::cburr, {4.0, 1.5, 1.3, 0.5});
  std::vector<double> raw;
  for (long long k : simulate_degrees(m, 800, rng)) raw.push_back(static_cast<double>(k));
  const WeightedSample s = WeightedSample::from_values(raw);
  BootstrapConfig cfg;
  cfg.replicates = 20;
  cfg.seed = 9;
  cfg.fit.likelihood = Likelihood::interval;
  cfg.threads = 1;
  const BootstrapResult a = bootstrap_chi_square_p(s, m, cfg);
  cfg.threads = 4;
  const BootstrapResult b = bootstrap_chi_square_p(s, m, cfg);
  CHECK(a.p_value == b.p_value);
  CHECK(a.replicates == b.replicates);
  for (std::size_t i = 0; i < a.statistics.size(); ++i) {
    if (std::isnan(a.statistics[i])) CHECK(std::isnan(b.statistics[i]));
    else CHECK(a.statistics[i] == b.statistics[i]);
  }
  CHECK(a.p_value >= 0.0);
  CHECK(a.p_value <= 1.0);
}

TEST_CASE("gof report degrades to a warning without enough bins") {
  const ModelSpec unit(Family::cburr, {1, 1, 1, 0});
  const GofReport g = gof_report(unit, counts({{2, 3}}), BootstrapConfig{.replicates = 10});
  CHECK_FALSE(g.chi2_available);
  CHECK_FALSE(g.p_available);
  REQUIRE(!g.warnings.empty());
  CHECK(g.rmse >= 0.0);
}
