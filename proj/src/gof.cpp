#include "cburr/gof.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "cburr/error.hpp"

namespace cburr {

namespace {

constexpr double kQFloor = 1e-12;

void require_degrees(const WeightedSample& sample) {
  if (sample.empty()) throw InsufficientDataError("empty sample");
  if (!sample.all_integer() || sample.min() < 1.0) {
    throw DomainError("degree data must be integers >= 1");
  }
}

double upper_mass(const ModelSpec& model, long long k) { return model.degree_survival(k); }

}  // namespace

FrequencyTable expected_frequencies(const ModelSpec& model, const WeightedSample& sample) {
  require_degrees(sample);
  FrequencyTable t;
  t.n = sample.total();
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const auto k = static_cast<long long>(sample.values[i]);
    t.degrees.push_back(k);
    t.observed.push_back(sample.weights[i]);
    t.expected.push_back(t.n * model.degree_probability(k));
  }
  return t;
}

FrequencyTable binned_table(const ModelSpec& model, const WeightedSample& sample) {
  require_degrees(sample);
  FrequencyTable t;
  t.n = sample.total();
  t.open_ends = true;
  const auto kmin = static_cast<long long>(sample.min());
  const auto kmax = static_cast<long long>(sample.max());
  const double norm = upper_mass(model, 1);
  if (!(norm > 0.0)) throw NumericError("model puts no mass on degrees >= 1");
  std::size_t j = 0;
  for (long long k = kmin; k <= kmax; ++k) {
    double obs = 0.0;
    if (j < sample.values.size() && static_cast<long long>(sample.values[j]) == k) {
      obs = sample.weights[j++];
    }
    const double lower = (k == kmin) ? 1.0 : upper_mass(model, k);
    const double upper = (k == kmax) ? 0.0 : upper_mass(model, k + 1);
    const double mass = (k == kmin ? norm : lower) - upper;
    t.degrees.push_back(k);
    t.observed.push_back(obs);
    t.expected.push_back(t.n * std::max(mass, 0.0) / norm);
  }
  return t;
}

double rmse(const FrequencyTable& table) {
  if (table.size() == 0) throw InsufficientDataError("empty frequency table");
  double s = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double d = table.observed[i] - table.expected[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(table.size()));
}

double mae(const FrequencyTable& table) {
  if (table.size() == 0) throw InsufficientDataError("empty frequency table");
  double s = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    s += std::abs(table.observed[i] - table.expected[i]);
  }
  return s / static_cast<double>(table.size());
}

KldResult kld_detail(const FrequencyTable& table) {
  if (table.size() == 0) throw InsufficientDataError("empty frequency table");
  double obs_total = 0.0, exp_total = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    obs_total += table.observed[i];
    exp_total += table.expected[i];
  }
  KldResult r;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = table.observed[i] / obs_total;
    if (p <= 0.0) continue;
    double q = exp_total > 0.0 ? table.expected[i] / exp_total : 0.0;
    if (!(q >= kQFloor)) {
      q = kQFloor;
      ++r.floored;
    }
    r.value += p * std::log(p / q);
  }
  r.value = std::max(r.value, 0.0);
  return r;
}

double kld(const FrequencyTable& table) { return kld_detail(table).value; }

double pearson_statistic(const std::vector<double>& observed,
                         const std::vector<double>& expected) {
  if (observed.size() != expected.size()) {
    throw DomainError("observed and expected lengths differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw NumericError("expected count must be positive");
    const double d = observed[i] - expected[i];
    s += d * d / expected[i];
  }
  return s;
}

std::vector<Bin> pool_bins(const FrequencyTable& table, double min_expected) {
  std::vector<Bin> bins;
  if (table.size() == 0) return bins;
  Bin cur;
  bool open = false;
  for (std::size_t r = table.size(); r-- > 0;) {
    if (!open) {
      cur = Bin{};
      cur.hi = table.degrees[r];
      open = true;
    }
    cur.lo = table.degrees[r];
    cur.observed += table.observed[r];
    cur.expected += table.expected[r];
    if (cur.expected >= min_expected) {
      bins.push_back(cur);
      open = false;
    }
  }
  if (open) {
    if (bins.empty()) {
      bins.push_back(cur);
    } else {
      Bin& left = bins.back();
      left.lo = cur.lo;
      left.observed += cur.observed;
      left.expected += cur.expected;
    }
  }
  std::reverse(bins.begin(), bins.end());
  if (table.open_ends) {
    bins.front().open_low = true;
    bins.back().open_high = true;
  }
  return bins;
}

ChiSquare chi_square(const FrequencyTable& table, double min_expected, int fitted_params) {
  ChiSquare out;
  out.bins = pool_bins(table, min_expected);
  if (out.bins.size() < 3) {
    std::ostringstream os;
    os << "chi-square needs at least 3 bins after pooling, got " << out.bins.size();
    throw InsufficientDataError(os.str());
  }
  std::vector<double> o, e;
  for (const Bin& b : out.bins) {
    o.push_back(b.observed);
    e.push_back(b.expected);
  }
  out.statistic = pearson_statistic(o, e);
  out.dof = std::max(1, static_cast<int>(out.bins.size()) - 1 - fitted_params);
  return out;
}

std::vector<long long> simulate_degrees(const ModelSpec& model, std::size_t n, Rng& rng) {
  if (!(upper_mass(model, 1) > 1e-12)) {
    throw NumericError("model puts no mass on degrees >= 1");
  }
  std::vector<long long> out;
  out.reserve(n);
  while (out.size() < n) {
    const double y = model.draw(rng);
    if (!(y < 9.0e18)) continue;
    const auto k = static_cast<long long>(std::floor(y + 0.5));
    if (k >= 1) out.push_back(k);
  }
  return out;
}

BootstrapResult bootstrap_chi_square_p(const WeightedSample& sample, const ModelSpec& fitted,
                                       const BootstrapConfig& config) {
  if (config.replicates < 1) throw DomainError("bootstrap needs at least one replicate");
  const int nparams = fitted.param_count();
  const double observed =
      chi_square(binned_table(fitted, sample), config.min_expected, nparams).statistic;
  const auto n = static_cast<std::size_t>(std::llround(sample.total()));

  FitConfig refit_cfg = config.fit;
  refit_cfg.starts = 1;
  refit_cfg.nested_start = false;
  refit_cfg.regime = fitted.regime();
  refit_cfg.initial = fitted.params();

  const auto B = static_cast<std::size_t>(config.replicates);
  std::vector<double> stats(B, std::numeric_limits<double>::quiet_NaN());
  auto run = [&](std::size_t b) {
    try {
      Rng rng(config.seed, b + 1);
      const std::vector<long long> ks = simulate_degrees(fitted, n, rng);
      std::vector<double> vals(ks.begin(), ks.end());
      const WeightedSample rep = WeightedSample::from_values(vals);
      if (config.refit) {
        const FitResult fit = fit_competitor(fitted.family(), rep, refit_cfg);
        stats[b] = chi_square(binned_table(fit.model(), rep), config.min_expected, nparams)
                       .statistic;
      } else {
        stats[b] =
            chi_square(binned_table(fitted, rep), config.min_expected, nparams).statistic;
      }
    } catch (const Error&) {
      stats[b] = std::numeric_limits<double>::quiet_NaN();
    }
  };

  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(B));
  if (threads <= 1) {
    for (std::size_t b = 0; b < B; ++b) run(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < B; b = next++) run(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  BootstrapResult r;
  r.observed = observed;
  std::size_t exceed = 0;
  for (double s : stats) {
    if (std::isnan(s)) {
      ++r.failures;
      continue;
    }
    ++r.replicates;
    if (s >= observed) ++exceed;
  }
  r.unreliable = r.failures * 5 > config.replicates;
  r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(r.replicates + 1);
  r.statistics = std::move(stats);
  return r;
}

GofReport gof_report(const ModelSpec& model, const WeightedSample& sample,
                     const BootstrapConfig& config) {
  GofReport g;
  const FrequencyTable table = expected_frequencies(model, sample);
  g.rmse = rmse(table);
  g.mae = mae(table);
  const KldResult k = kld_detail(table);
  g.kld = k.value;
  g.kld_floored = k.floored;
  if (k.floored > 0) {
    g.warnings.push_back("kld: " + std::to_string(k.floored) +
                         " model probabilities floored at 1e-12");
  }
  try {
    const ChiSquare cs =
        chi_square(binned_table(model, sample), config.min_expected, model.param_count());
    g.chi2 = cs.statistic;
    g.chi2_dof = cs.dof;
    g.bins = cs.bins;
    g.chi2_available = true;
  } catch (const InsufficientDataError& e) {
    g.warnings.push_back(std::string("chi-square unavailable: ") + e.what());
    return g;
  }
  if (config.replicates > 0) {
    const BootstrapResult b = bootstrap_chi_square_p(sample, model, config);
    g.p_boot = b.p_value;
    g.p_available = true;
    g.replicates = b.replicates;
    g.failures = b.failures;
    g.unreliable = b.unreliable;
    if (b.unreliable) {
      g.warnings.push_back("bootstrap p unreliable: " + std::to_string(b.failures) + " of " +
                           std::to_string(config.replicates) + " replicates failed");
    }
  }
  return g;
}

}  // namespace cburr
