#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cburr/degree_io.hpp"
#include "cburr/estimate.hpp"
#include "cburr/gof.hpp"

namespace cburr {

inline constexpr const char* kReportSchemaVersion = "cburr-report/1";

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  InputFormat input_format = InputFormat::auto_detect;
  std::vector<std::string> models;
  /// Explicit parameters for sample and gof (skips fitting in gof).
  std::optional<std::vector<double>> params;
  std::size_t sample_size = 0;
  bool discretize = false;

  int starts = 5;
  Regime regime = Regime::validity;
  double tol = 1e-6;
  int max_iter = 500;
  bool free_scale = false;
  /// Unset picks interval for integer degrees >= 1 and continuous otherwise.
  std::optional<Likelihood> likelihood;

  int bootstrap_b = 0;
  bool refit = true;
  double min_expected = 5.0;
  int threads = 0;

  std::uint64_t seed = 1;
  std::string out_dir;
  bool svg = false;

  int loop_degree = 2;
  StdevDivisor stdev_divisor = StdevDivisor::n_minus_1;
  bool directed = false;
  bool dedupe = false;
  bool drop_self_loops = false;

  /// Throws DomainError describing the first invalid field.
  void validate() const;
  FitConfig fit_config(bool integer_degrees = false) const;
  BootstrapConfig bootstrap_config(bool integer_degrees = false) const;
  ParseOptions parse_options() const;
  DegreeOptions degree_options() const;
};

nlohmann::json to_json(const RunConfig& config);

std::string to_string(InputFormat format);
InputFormat input_format_from_string(const std::string& name);
std::string to_string(StdevDivisor divisor);
StdevDivisor stdev_divisor_from_string(const std::string& name);

/// Summary of a (possibly non-integer) sample.
nlohmann::json sample_stats_json(const WeightedSample& sample, StdevDivisor divisor);

nlohmann::json fit_to_json(const FitResult& fit);
nlohmann::json gof_to_json(const GofReport& gof);

/// Each run_* command loads every input, builds a report and, when out_dir is
/// set, writes it and the accompanying CSV/SVG files there.
nlohmann::json run_fit(const RunConfig& config);
nlohmann::json run_compare(const RunConfig& config);
nlohmann::json run_gof(const RunConfig& config);
/// Writes one value per line.
void run_sample(const RunConfig& config, std::ostream& out);

struct DatasetInfo {
  std::string name;
  std::string page_url;
};
const std::vector<DatasetInfo>& known_datasets();
/// Dataset cache directory: CBURR_DATA_DIR, else ./data.
std::string data_dir();

/// Degrees with expected counts per model; columns degree, observed,
/// expected_<family>...
void write_plot_csv(std::ostream& out, const WeightedSample& sample,
                    const std::vector<ModelSpec>& models);
/// Minimal log-log scatter of observed counts with model curves.
void write_plot_svg(std::ostream& out, const WeightedSample& sample,
                    const std::vector<ModelSpec>& models);

/// Returns a list of violations (empty when valid). Supports type, enum,
/// const, anyOf, required, properties, additionalProperties, items, minimum,
/// maximum, minItems and local $ref.
std::vector<std::string> validate_json(const nlohmann::json& schema, const nlohmann::json& doc);

/// 0 success, 1 usage, 2 data, 3 numeric.
int exit_code_for(const std::exception& e);

/// Serializes a report with a fixed layout (two-space indent, trailing newline).
std::string dump_report(const nlohmann::json& report);

}  // namespace cburr
