#include "cburr/sample.hpp"

#include <algorithm>
#include <cmath>

#include "cburr/error.hpp"

namespace cburr {

WeightedSample WeightedSample::from_values(std::span<const double> raw) {
  std::vector<double> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end());
  WeightedSample s;
  for (double v : sorted) {
    if (std::isnan(v)) throw DataError("sample contains NaN");
    if (!s.values.empty() && s.values.back() == v) {
      s.weights.back() += 1.0;
    } else {
      s.values.push_back(v);
      s.weights.push_back(1.0);
    }
  }
  return s;
}

double WeightedSample::total() const {
  double n = 0.0;
  for (double w : weights) n += w;
  return n;
}

bool WeightedSample::all_integer() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v) && v == std::floor(v); });
}

double WeightedSample::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * weights[i];
  return s / total();
}

double WeightedSample::median() const {
  if (empty()) throw InsufficientDataError("median of empty sample");
  const double half = 0.5 * total();
  double cum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cum += weights[i];
    if (cum >= half) return values[i];
  }
  return values.back();
}

}  // namespace cburr
