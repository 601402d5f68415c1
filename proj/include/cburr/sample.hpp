#pragma once

#include <span>
#include <vector>

namespace cburr {

/// Distinct observation values with multiplicities. Likelihoods are evaluated
/// once per distinct value and weighted by its count.
struct WeightedSample {
  std::vector<double> values;   // ascending, distinct
  std::vector<double> weights;  // positive counts, same length as values

  /// Aggregates raw observations (any order, repeats allowed).
  static WeightedSample from_values(std::span<const double> raw);

  double total() const;
  bool empty() const { return values.empty(); }
  bool all_integer() const;
  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double mean() const;
  /// Weighted median (lower median for even totals).
  double median() const;
};

}  // namespace cburr
