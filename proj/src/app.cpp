#include "cburr/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <sstream>

#include "cburr/error.hpp"

namespace cburr {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Dataset {
  std::string path;
  std::string stem;
  WeightedSample sample;
  bool degrees = false;  // integer values >= 1
};

Dataset load_dataset(const RunConfig& cfg, const std::string& path) {
  Dataset d;
  d.path = path;
  d.stem = fs::path(path).stem().string();
  if (d.stem.empty()) d.stem = "input";
  const std::vector<double> values = load_sample_values(path, cfg.input_format,
                                                        cfg.parse_options(),
                                                        cfg.degree_options());
  d.sample = WeightedSample::from_values(values);
  d.degrees = d.sample.all_integer() && d.sample.min() >= 1.0;
  return d;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + cfg.out_dir + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

std::string output_prefix(const RunConfig& cfg, const Dataset& d) {
  return cfg.inputs.size() > 1 ? d.stem + "_" : std::string();
}

json base_report(const RunConfig& cfg) {
  json r;
  r["schema_version"] = kReportSchemaVersion;
  r["tool"] = "cburr";
  r["command"] = cfg.command;
  r["config"] = to_json(cfg);
  r["datasets"] = json::array();
  r["warnings"] = json::array();
  return r;
}

json error_json(const std::exception& e) {
  json j;
  j["message"] = e.what();
  const int code = exit_code_for(e);
  j["kind"] = code == 1 ? "usage" : code == 2 ? "data" : "numeric";
  return j;
}

struct ModelOutcome {
  std::string family;
  std::optional<FitResult> fit;
  std::optional<GofReport> gof;
  std::optional<json> error;
};

ModelOutcome fit_and_assess(Family family, const Dataset& d, const RunConfig& cfg,
                            bool catch_errors) {
  ModelOutcome o;
  o.family = std::string(family_name(family));
  try {
    FitResult fit = fit_competitor(family, d.sample, cfg.fit_config(d.degrees));
    if (!fit.converged) fit.warnings.push_back("optimizer did not converge: " + fit.message);
    if (d.degrees && !is_discrete(family) && !fit.active_bounds.empty() &&
        fit.likelihood == Likelihood::continuous) {
      fit.warnings.push_back(
          "density likelihood on integer degrees can be unbounded; try --likelihood interval");
    }
    if (d.degrees) {
      o.gof = gof_report(fit.model(), d.sample, cfg.bootstrap_config(d.degrees));
    } else {
      fit.warnings.push_back("goodness-of-fit skipped: data are not integer degrees >= 1");
    }
    o.fit = std::move(fit);
  } catch (const Error& e) {
    if (!catch_errors) throw;
    o.error = error_json(e);
  }
  return o;
}

json outcome_json(const ModelOutcome& o) {
  json j;
  if (o.fit) {
    j = fit_to_json(*o.fit);
  } else {
    j["family"] = o.family;
  }
  j["gof"] = o.gof ? gof_to_json(*o.gof) : json(nullptr);
  j["error"] = o.error ? *o.error : json(nullptr);
  return j;
}

std::vector<ModelSpec> plotted_models(const std::vector<ModelOutcome>& outcomes) {
  std::vector<ModelSpec> models;
  for (const auto& o : outcomes) {
    if (o.fit) models.push_back(o.fit->model());
  }
  return models;
}

void emit_plots(const RunConfig& cfg, const Dataset& d, const std::vector<ModelSpec>& models,
                json& entry) {
  if (!d.degrees || cfg.out_dir.empty()) return;
  const fs::path dir = ensure_out_dir(cfg);
  const std::string prefix = output_prefix(cfg, d);
  std::ostringstream csv;
  write_plot_csv(csv, d.sample, models);
  write_file(dir / (prefix + "plot.csv"), csv.str());
  entry["plot_csv"] = prefix + "plot.csv";
  if (cfg.svg) {
    std::ostringstream svg;
    write_plot_svg(svg, d.sample, models);
    write_file(dir / (prefix + "plot.svg"), svg.str());
    entry["plot_svg"] = prefix + "plot.svg";
  }
}

json dataset_entry(const RunConfig& cfg, const Dataset& d) {
  json entry;
  entry["input"] = d.path;
  entry["stats"] = sample_stats_json(d.sample, cfg.stdev_divisor);
  entry["integer_degrees"] = d.degrees;
  return entry;
}

void write_report(const RunConfig& cfg, const json& report) {
  if (cfg.out_dir.empty()) return;
  const fs::path dir = ensure_out_dir(cfg);
  write_file(dir / (cfg.command + "_report.json"), dump_report(report));
}

void collect_warnings(json& report, const std::string& where, const json& fit) {
  if (!fit.contains("warnings")) return;
  for (const auto& w : fit["warnings"]) {
    report["warnings"].push_back(where + ": " + w.get<std::string>());
  }
  if (fit.contains("gof") && fit["gof"].is_object()) {
    for (const auto& w : fit["gof"]["warnings"]) {
      report["warnings"].push_back(where + ": " + w.get<std::string>());
    }
  }
}

std::vector<Family> requested_families(const RunConfig& cfg, bool default_all) {
  std::vector<Family> out;
  if (cfg.models.empty()) {
    if (default_all) return all_families();
    return {Family::cburr};
  }
  for (const auto& m : cfg.models) {
    if (m == "all") {
      for (Family f : competitor_families()) out.push_back(f);
      continue;
    }
    out.push_back(family_from_name(m));
  }
  return out;
}

// Index-level report of which fit holds the best value of each metric.
json rank_models(const std::vector<ModelOutcome>& outcomes, json& fits) {
  json comparison;
  json best = json::object();
  json ranking = json::object();
  struct Metric {
    const char* name;
    bool maximize;
  };
  for (const Metric m : {Metric{"loglik", true}, Metric{"rmse", false}, Metric{"kld", false},
                         Metric{"mae", false}}) {
    std::vector<std::pair<double, std::size_t>> vals;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      if (!o.fit) continue;
      double v;
      if (std::string(m.name) == "loglik") {
        v = o.fit->loglik;
      } else {
        if (!o.gof) continue;
        v = std::string(m.name) == "rmse" ? o.gof->rmse
            : std::string(m.name) == "kld" ? o.gof->kld
                                           : o.gof->mae;
      }
      if (!std::isfinite(v)) continue;
      vals.emplace_back(m.maximize ? -v : v, i);
    }
    std::stable_sort(vals.begin(), vals.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    json order = json::array();
    for (const auto& [v, i] : vals) order.push_back(outcomes[i].family);
    ranking[m.name] = order;
    if (!vals.empty()) {
      best[m.name] = outcomes[vals.front().second].family;
      fits[vals.front().second]["best"].push_back(m.name);
    } else {
      best[m.name] = nullptr;
    }
  }
  comparison["best"] = best;
  comparison["ranking"] = ranking;
  return comparison;
}

std::string compare_csv(const std::vector<ModelOutcome>& outcomes, const json& fits) {
  std::ostringstream os;
  os << "family,n_params,loglik,rmse,kld,mae,chi2,chi2_dof,p_boot,converged,best,error\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    os << o.family << ',';
    if (o.fit) {
      os << o.fit->params.size() << ',' << fmt(o.fit->loglik) << ',';
    } else {
      os << ",,";
    }
    if (o.gof) {
      os << fmt(o.gof->rmse) << ',' << fmt(o.gof->kld) << ',' << fmt(o.gof->mae) << ',';
      if (o.gof->chi2_available) {
        os << fmt(o.gof->chi2) << ',' << o.gof->chi2_dof << ',';
      } else {
        os << ",,";
      }
      if (o.gof->p_available) os << fmt(o.gof->p_boot);
      os << ',';
    } else {
      os << ",,,,,,";
    }
    os << (o.fit ? (o.fit->converged ? "true" : "false") : "") << ',';
    std::string best;
    for (const auto& b : fits[i]["best"]) best += (best.empty() ? "" : ";") + b.get<std::string>();
    os << best << ',';
    if (o.error) {
      std::string msg = (*o.error)["message"].get<std::string>();
      std::replace(msg.begin(), msg.end(), '"', '\'');
      os << '"' << msg << '"';
    }
    os << '\n';
  }
  return os.str();
}

double pow10(double x) { return std::pow(10.0, x); }

}  // namespace

void RunConfig::validate() const {
  if (starts < 1) throw DomainError("--starts must be at least 1");
  if (bootstrap_b < 0) throw DomainError("--bootstrap-B must be non-negative");
  if (!(min_expected > 0.0)) throw DomainError("--min-expected must be positive");
  if (loop_degree != 1 && loop_degree != 2) throw DomainError("--loop-degree must be 1 or 2");
  if (max_iter < 1) throw DomainError("--max-iter must be at least 1");
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
  for (const auto& m : models) {
    if (m != "all") (void)family_from_name(m);
  }
  const bool needs_input = command == "fit" || command == "compare" || command == "gof";
  if (needs_input && inputs.empty()) throw DomainError(command + " needs --input");
  if (command == "sample") {
    if (models.size() != 1) throw DomainError("sample needs exactly one --model");
    if (!params) throw DomainError("sample needs --params");
  }
  if (command == "gof" && models.size() > 1) throw DomainError("gof takes a single --model");
}

FitConfig RunConfig::fit_config(bool integer_degrees) const {
  FitConfig f;
  f.starts = starts;
  f.regime = regime;
  f.tol = tol;
  f.max_iter = max_iter;
  f.seed = seed;
  f.free_scale = free_scale;
  f.likelihood = likelihood.value_or(integer_degrees ? Likelihood::interval
                                                     : Likelihood::continuous);
  return f;
}

BootstrapConfig RunConfig::bootstrap_config(bool integer_degrees) const {
  BootstrapConfig b;
  b.replicates = bootstrap_b;
  b.refit = refit;
  b.min_expected = min_expected;
  b.seed = seed;
  b.threads = threads;
  b.fit = fit_config(integer_degrees);
  return b;
}

ParseOptions RunConfig::parse_options() const {
  ParseOptions p;
  p.directed = directed;
  p.dedupe = dedupe;
  p.drop_self_loops = drop_self_loops;
  return p;
}

DegreeOptions RunConfig::degree_options() const {
  DegreeOptions d;
  d.loop_degree = loop_degree;
  return d;
}

std::string to_string(InputFormat format) {
  switch (format) {
    case InputFormat::edges: return "edges";
    case InputFormat::histogram: return "histogram";
    case InputFormat::values: return "values";
    default: return "auto";
  }
}

InputFormat input_format_from_string(const std::string& name) {
  if (name == "auto") return InputFormat::auto_detect;
  if (name == "edges") return InputFormat::edges;
  if (name == "histogram") return InputFormat::histogram;
  if (name == "values") return InputFormat::values;
  throw DomainError("unknown input format: " + name);
}

std::string to_string(StdevDivisor divisor) {
  return divisor == StdevDivisor::n ? "n" : "n-1";
}

StdevDivisor stdev_divisor_from_string(const std::string& name) {
  if (name == "n") return StdevDivisor::n;
  if (name == "n-1") return StdevDivisor::n_minus_1;
  throw DomainError("stdev divisor must be n or n-1, got " + name);
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["inputs"] = c.inputs;
  j["input_format"] = to_string(c.input_format);
  j["models"] = c.models;
  j["params"] = c.params ? json(*c.params) : json(nullptr);
  j["n"] = c.sample_size;
  j["discretize"] = c.discretize;
  j["estimation"] = {{"starts", c.starts},       {"regime", to_string(c.regime)},
                     {"tol", c.tol},             {"max_iter", c.max_iter},
                     {"free_scale", c.free_scale},
                     {"likelihood", c.likelihood ? to_string(*c.likelihood) : "auto"}};
  j["gof"] = {{"bootstrap_B", c.bootstrap_b},
              {"refit", c.refit},
              {"min_expected", c.min_expected},
              {"threads", c.threads}};
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  j["svg"] = c.svg;
  j["ingest"] = {{"loop_degree", c.loop_degree},
                 {"stdev_divisor", to_string(c.stdev_divisor)},
                 {"directed", c.directed},
                 {"dedupe", c.dedupe},
                 {"drop_self_loops", c.drop_self_loops}};
  return j;
}

json sample_stats_json(const WeightedSample& s, StdevDivisor divisor) {
  json j;
  const double n = s.total();
  j["n"] = static_cast<long long>(std::llround(n));
  j["unique"] = s.values.size();
  j["min"] = s.min();
  j["max"] = s.max();
  const double mean = s.mean();
  j["mean"] = mean;
  j["stdev_divisor"] = to_string(divisor);
  const double denom = divisor == StdevDivisor::n ? n : n - 1.0;
  if (denom > 0.0) {
    double ss = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double d = s.values[i] - mean;
      ss += s.weights[i] * d * d;
    }
    const double sd = std::sqrt(ss / denom);
    j["stdev"] = sd;
    j["cov"] = sd / mean;
  } else {
    j["stdev"] = nullptr;
    j["cov"] = nullptr;
  }
  return j;
}

json fit_to_json(const FitResult& f) {
  json j;
  j["family"] = std::string(family_name(f.family));
  json params = json::object();
  for (std::size_t i = 0; i < f.params.size() && i < f.param_names.size(); ++i) {
    params[f.param_names[i]] = f.params[i];
  }
  j["params"] = params;
  j["param_order"] = f.param_names;
  j["loglik"] = number_or_null(f.loglik);
  j["converged"] = f.converged;
  j["iterations"] = f.iterations;
  j["gradient_norm"] = number_or_null(f.gradient_norm);
  j["regime"] = to_string(f.regime);
  j["likelihood"] = to_string(f.likelihood);
  j["starts_used"] = f.starts_used;
  j["active_bounds"] = f.active_bounds;
  j["message"] = f.message;
  j["warnings"] = f.warnings;
  j["best"] = json::array();
  return j;
}

json gof_to_json(const GofReport& g) {
  json j;
  j["rmse"] = number_or_null(g.rmse);
  j["kld"] = number_or_null(g.kld);
  j["kld_floored"] = g.kld_floored;
  j["mae"] = number_or_null(g.mae);
  j["chi2"] = g.chi2_available ? number_or_null(g.chi2) : json(nullptr);
  j["chi2_dof"] = g.chi2_available ? json(g.chi2_dof) : json(nullptr);
  j["p_boot"] = g.p_available ? json(g.p_boot) : json(nullptr);
  j["replicates"] = g.replicates;
  j["replicate_failures"] = g.failures;
  j["unreliable"] = g.unreliable;
  json bins = json::array();
  for (const Bin& b : g.bins) {
    bins.push_back({{"lo", b.lo},
                    {"hi", b.hi},
                    {"open_low", b.open_low},
                    {"open_high", b.open_high},
                    {"observed", b.observed},
                    {"expected", b.expected}});
  }
  j["bins"] = bins;
  j["warnings"] = g.warnings;
  return j;
}

json run_fit(const RunConfig& cfg) {
  cfg.validate();
  json report = base_report(cfg);
  const std::vector<Family> families = requested_families(cfg, false);
  for (const auto& path : cfg.inputs) {
    const Dataset d = load_dataset(cfg, path);
    json entry = dataset_entry(cfg, d);
    std::vector<ModelOutcome> outcomes;
    json fits = json::array();
    for (Family f : families) {
      outcomes.push_back(fit_and_assess(f, d, cfg, false));
      fits.push_back(outcome_json(outcomes.back()));
      collect_warnings(report, d.stem + "/" + outcomes.back().family, fits.back());
    }
    entry["fits"] = fits;
    emit_plots(cfg, d, plotted_models(outcomes), entry);
    report["datasets"].push_back(entry);
  }
  write_report(cfg, report);
  return report;
}

json run_compare(const RunConfig& cfg) {
  cfg.validate();
  json report = base_report(cfg);
  const std::vector<Family> families = requested_families(cfg, true);
  for (const auto& path : cfg.inputs) {
    const Dataset d = load_dataset(cfg, path);
    json entry = dataset_entry(cfg, d);
    std::vector<std::future<ModelOutcome>> tasks;
    for (Family f : families) {
      tasks.push_back(std::async(std::launch::async,
                                 [&d, &cfg, f] { return fit_and_assess(f, d, cfg, true); }));
    }
    std::vector<ModelOutcome> outcomes;
    for (auto& t : tasks) outcomes.push_back(t.get());
    json fits = json::array();
    for (const auto& o : outcomes) {
      fits.push_back(outcome_json(o));
      collect_warnings(report, d.stem + "/" + o.family, fits.back());
      if (o.error) {
        report["warnings"].push_back(d.stem + "/" + o.family + ": fit failed: " +
                                     (*o.error)["message"].get<std::string>());
      }
    }
    entry["comparison"] = rank_models(outcomes, fits);
    entry["fits"] = fits;
    if (!cfg.out_dir.empty()) {
      const fs::path dir = ensure_out_dir(cfg);
      const std::string name = output_prefix(cfg, d) + "compare.csv";
      write_file(dir / name, compare_csv(outcomes, fits));
      entry["compare_csv"] = name;
    }
    emit_plots(cfg, d, plotted_models(outcomes), entry);
    report["datasets"].push_back(entry);
  }
  write_report(cfg, report);
  return report;
}

json run_gof(const RunConfig& cfg) {
  cfg.validate();
  json report = base_report(cfg);
  const Family family = requested_families(cfg, false).front();
  for (const auto& path : cfg.inputs) {
    const Dataset d = load_dataset(cfg, path);
    if (!d.degrees) throw DataError("gof needs integer degrees >= 1 in " + path);
    json entry = dataset_entry(cfg, d);
    FitResult fit;
    if (cfg.params) {
      const ModelSpec m(family, *cfg.params, cfg.regime);
      fit.family = family;
      fit.params = *cfg.params;
      fit.param_names = param_names(family, cfg.params->size() > param_names(family).size());
      fit.regime = cfg.regime;
      fit.likelihood = cfg.fit_config(d.degrees).likelihood;
      fit.loglik = fit.likelihood == Likelihood::interval ? model_interval_loglik(m, d.sample)
                                                          : model_loglik(m, d.sample);
      fit.converged = true;
      fit.message = "parameters supplied";
    } else {
      fit = fit_competitor(family, d.sample, cfg.fit_config(d.degrees));
    }
    ModelOutcome o;
    o.family = std::string(family_name(family));
    o.gof = gof_report(fit.model(), d.sample, cfg.bootstrap_config(d.degrees));
    o.fit = std::move(fit);
    json fj = outcome_json(o);
    fj["source"] = cfg.params ? "given" : "fit";
    collect_warnings(report, d.stem + "/" + o.family, fj);
    entry["fits"] = json::array({fj});
    std::vector<ModelOutcome> one;
    one.push_back(std::move(o));
    emit_plots(cfg, d, plotted_models(one), entry);
    report["datasets"].push_back(entry);
  }
  write_report(cfg, report);
  return report;
}

void run_sample(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const ModelSpec model(family_from_name(cfg.models.front()), *cfg.params, cfg.regime);
  Rng rng(cfg.seed);
  if (cfg.discretize) {
    for (long long k : simulate_degrees(model, cfg.sample_size, rng)) out << k << '\n';
    return;
  }
  char buf[40];
  for (double v : model.sample(cfg.sample_size, rng)) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
}

const std::vector<DatasetInfo>& known_datasets() {
  static const std::vector<DatasetInfo> list = [] {
    std::vector<DatasetInfo> v;
    for (const char* name :
         {"bio-dmela", "bio-mouse-gene", "bio-diseasome", "bio-yeast", "bio-SC-HT", "bio-SC-LC",
          "bio-HS-CX", "bio-HS-LC", "bio-grid-fruitfly", "bio-grid-human", "bio-grid-worm",
          "bio-grid-yeast"}) {
      v.push_back({name, std::string("https://networkrepository.com/") + name + ".php"});
    }
    return v;
  }();
  return list;
}

std::string data_dir() {
  if (const char* env = std::getenv("CBURR_DATA_DIR"); env && *env) return env;
  return "data";
}

void write_plot_csv(std::ostream& out, const WeightedSample& sample,
                    const std::vector<ModelSpec>& models) {
  std::vector<FrequencyTable> tables;
  for (const auto& m : models) tables.push_back(expected_frequencies(m, sample));
  out << "degree,observed";
  for (const auto& m : models) out << ",expected_" << family_name(m.family());
  out << '\n';
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    out << static_cast<long long>(sample.values[i]) << ',' << fmt(sample.weights[i]);
    for (const auto& t : tables) out << ',' << fmt(t.expected[i]);
    out << '\n';
  }
}

void write_plot_svg(std::ostream& out, const WeightedSample& sample,
                    const std::vector<ModelSpec>& models) {
  const double width = 640, height = 480, margin = 56;
  const double x0 = std::log10(sample.min()), x1 = std::max(std::log10(sample.max()), x0 + 1.0);
  double ymax = 0.0;
  for (double w : sample.weights) ymax = std::max(ymax, w);
  const double y0 = -1.0, y1 = std::ceil(std::log10(ymax) + 0.1);
  const auto sx = [&](double lx) { return margin + (lx - x0) / (x1 - x0) * (width - 2 * margin); };
  const auto sy = [&](double ly) {
    return height - margin - (ly - y0) / (y1 - y0) * (height - 2 * margin);
  };
  static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                margin, margin, width - 2 * margin, height - 2 * margin);
  out << buf;
  for (int e = static_cast<int>(std::ceil(x0)); e <= static_cast<int>(std::floor(x1)); ++e) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">1e%d</text>\n",
                  sx(e), height - margin + 16, e);
    out << buf;
  }
  for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); ++e) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%d</text>\n",
                  margin - 6, sy(e) + 4, e);
    out << buf;
  }
  out << "<text x=\"320\" y=\"470\" text-anchor=\"middle\">degree</text>\n";
  out << "<text x=\"14\" y=\"240\" transform=\"rotate(-90 14 240)\" "
         "text-anchor=\"middle\">count</text>\n";
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"black\"/>\n",
                  sx(std::log10(sample.values[i])), sy(std::log10(sample.weights[i])));
    out << buf;
  }
  for (std::size_t m = 0; m < models.size(); ++m) {
    const FrequencyTable t = expected_frequencies(models[m], sample);
    out << "<polyline fill=\"none\" stroke=\"" << colors[m % 10] << "\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!(t.expected[i] > pow10(y0))) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(std::log10(static_cast<double>(t.degrees[i]))),
                    sy(std::log10(t.expected[i])));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">",
                  width - margin - 150, margin + 16 + 14.0 * static_cast<double>(m), colors[m % 10]);
    out << buf << family_name(models[m].family()) << "</text>\n";
  }
  out << "</svg>\n";
}

namespace {

bool type_matches(const std::string& type, const json& v) {
  if (type == "null") return v.is_null();
  if (type == "boolean") return v.is_boolean();
  if (type == "string") return v.is_string();
  if (type == "array") return v.is_array();
  if (type == "object") return v.is_object();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

void validate_node(const json& root, const json& schema, const json& doc, const std::string& at,
                   std::vector<std::string>& errors, int depth) {
  if (depth > 64) {
    errors.push_back(at + ": schema nesting too deep");
    return;
  }
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) errors.push_back(at + ": not allowed");
    return;
  }
  if (!schema.is_object()) return;
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    if (ref.rfind("#/", 0) != 0) {
      errors.push_back(at + ": unsupported $ref " + ref);
      return;
    }
    const json::json_pointer ptr(ref.substr(1));
    if (!root.contains(ptr)) {
      errors.push_back(at + ": unresolved $ref " + ref);
      return;
    }
    validate_node(root, root.at(ptr), doc, at, errors, depth + 1);
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), doc);
    } else {
      for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), doc);
    }
    if (!ok) {
      errors.push_back(at + ": expected type " + t.dump() + ", got " + doc.type_name());
      return;
    }
  }
  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& alt : schema["anyOf"]) {
      std::vector<std::string> sub;
      validate_node(root, alt, doc, at, sub, depth + 1);
      if (sub.empty()) {
        any = true;
        break;
      }
    }
    if (!any) errors.push_back(at + ": matches none of anyOf");
  }
  if (schema.contains("const") && doc != schema["const"]) {
    errors.push_back(at + ": expected " + schema["const"].dump());
  }
  if (schema.contains("enum")) {
    const auto& e = schema["enum"];
    if (std::find(e.begin(), e.end(), doc) == e.end()) {
      errors.push_back(at + ": value " + doc.dump() + " not in enum");
    }
  }
  if (doc.is_number()) {
    const double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
      errors.push_back(at + ": below minimum");
    }
    if (schema.contains("maximum") && v > schema["maximum"].get<double>()) {
      errors.push_back(at + ": above maximum");
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!doc.contains(key.get<std::string>())) {
          errors.push_back(at + ": missing required property " + key.get<std::string>());
        }
      }
    }
    const json props = schema.value("properties", json::object());
    for (const auto& [key, value] : doc.items()) {
      if (props.contains(key)) {
        validate_node(root, props[key], value, at + "/" + key, errors, depth + 1);
      } else if (schema.contains("additionalProperties")) {
        validate_node(root, schema["additionalProperties"], value, at + "/" + key, errors,
                      depth + 1);
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(at + ": too few items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        validate_node(root, schema["items"], doc[i], at + "/" + std::to_string(i), errors,
                      depth + 1);
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_json(const json& schema, const json& doc) {
  std::vector<std::string> errors;
  validate_node(schema, schema, doc, "", errors, 0);
  return errors;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::usage: return 1;
      case ErrorKind::data: return 2;
      case ErrorKind::numeric: return 3;
    }
  }
  if (dynamic_cast<const json::exception*>(&e)) return 2;
  return 3;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace cburr
