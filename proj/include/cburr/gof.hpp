#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cburr/estimate.hpp"
#include "cburr/models.hpp"
#include "cburr/sample.hpp"

namespace cburr {

/// Observed and expected counts per degree.
struct FrequencyTable {
  std::vector<long long> degrees;  // ascending, unique
  std::vector<double> observed;
  std::vector<double> expected;
  double n = 0.0;
  /// The first and last cells extend to the ends of the support.
  bool open_ends = false;

  std::size_t size() const { return degrees.size(); }
};

/// A run of pooled table cells. `lo`/`hi` are inclusive degree limits; an open
/// end is flagged separately.
struct Bin {
  long long lo = 0;
  long long hi = 0;
  bool open_low = false;
  bool open_high = false;
  double observed = 0.0;
  double expected = 0.0;
};

struct ChiSquare {
  double statistic = 0.0;
  int dof = 1;
  std::vector<Bin> bins;
};

/// Expected counts on the observed degrees: n * P(round(Y) = k).
/// Requires integer data >= 1.
FrequencyTable expected_frequencies(const ModelSpec& model, const WeightedSample& sample);

/// Contiguous table from min to max observed degree, with the model
/// conditioned on round(Y) >= 1. The first cell holds [1, k_min] and the last
/// [k_max, inf), so the expected counts sum to n.
FrequencyTable binned_table(const ModelSpec& model, const WeightedSample& sample);

double rmse(const FrequencyTable& table);
double mae(const FrequencyTable& table);

struct KldResult {
  double value = 0.0;
  int floored = 0;  // degrees whose model probability was raised to 1e-12
};
/// KL divergence p||q of the empirical frequencies p from the model
/// frequencies q, both normalized over the table's degrees.
KldResult kld_detail(const FrequencyTable& table);
double kld(const FrequencyTable& table);

/// Pearson statistic sum (O - E)^2 / E over the given cells, without pooling.
double pearson_statistic(const std::vector<double>& observed, const std::vector<double>& expected);

/// Pools adjacent cells right to left until every bin has expected >=
/// min_expected; a short leftover on the left joins its neighbour.
std::vector<Bin> pool_bins(const FrequencyTable& table, double min_expected = 5.0);

/// Pooled chi-square with dof = bins - 1 - fitted_params (at least 1).
/// Throws InsufficientDataError for fewer than 3 bins.
ChiSquare chi_square(const FrequencyTable& table, double min_expected = 5.0,
                     int fitted_params = 0);

struct BootstrapConfig {
  int replicates = 1000;
  bool refit = true;
  double min_expected = 5.0;
  std::uint64_t seed = 1;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
  /// Used for replicate refits (warm-started at the fitted parameters).
  FitConfig fit{};
};

struct BootstrapResult {
  double p_value = 1.0;
  double observed = 0.0;
  int replicates = 0;  // successful replicates
  int failures = 0;
  bool unreliable = false;  // more than 20% of replicates failed
  std::vector<double> statistics;  // per replicate, NaN for failures
};

/// Draws a degree-like sample of size n: continuous draws are rounded half up
/// and values below 1 are redrawn.
std::vector<long long> simulate_degrees(const ModelSpec& model, std::size_t n, Rng& rng);

/// Parametric bootstrap p = (1 + #{stat_b >= observed}) / (B + 1), B counting
/// successful replicates. Replicate b uses the stream Rng(seed, b + 1).
BootstrapResult bootstrap_chi_square_p(const WeightedSample& sample, const ModelSpec& fitted,
                                       const BootstrapConfig& config = {});

struct GofReport {
  double rmse = 0.0;
  double kld = 0.0;
  int kld_floored = 0;
  double mae = 0.0;
  double chi2 = 0.0;
  int chi2_dof = 0;
  bool chi2_available = false;
  double p_boot = 1.0;
  bool p_available = false;
  int replicates = 0;
  int failures = 0;
  bool unreliable = false;
  std::vector<Bin> bins;
  std::vector<std::string> warnings;
};

/// Metrics plus the pooled chi-square; the bootstrap runs when
/// config.replicates > 0. Insufficient bins are reported as a warning.
GofReport gof_report(const ModelSpec& model, const WeightedSample& sample,
                     const BootstrapConfig& config = {});

}  // namespace cburr
