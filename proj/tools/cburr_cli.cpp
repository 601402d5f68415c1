#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "cburr/app.hpp"
#include "cburr/error.hpp"

namespace {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cburr::DataError("cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char b[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", digest[i]);
    hex += b;
  }
  return hex;
}

struct Flags {
  std::string model;
  std::vector<std::string> models;
  std::string regime = "validity";
  std::string stdev_divisor = "n-1";
  std::string format = "auto";
  std::string likelihood = "auto";
  std::vector<double> params;
  int bootstrap_b = -1;
  std::string dataset;
  std::string sha256;
};

void add_common(CLI::App* cmd, cburr::RunConfig& cfg, Flags& f, bool with_input) {
  if (with_input) {
    cmd->add_option("--input", cfg.inputs, "Edge list, degree histogram CSV or value list")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", f.format, "Input format")
        ->check(CLI::IsMember({"auto", "edges", "histogram", "values"}));
    cmd->add_option("--loop-degree", cfg.loop_degree, "Degree added by a self-loop")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--stdev-divisor", f.stdev_divisor, "Divisor for the reported stdev")
        ->check(CLI::IsMember({"n", "n-1"}));
    cmd->add_flag("--directed", cfg.directed, "Treat edges as directed when deduplicating");
    cmd->add_flag("--dedupe", cfg.dedupe, "Drop repeated edges");
    cmd->add_flag("--drop-self-loops", cfg.drop_self_loops, "Ignore self-loops");
    cmd->add_option("--out", cfg.out_dir, "Output directory");
    cmd->add_flag("--svg", cfg.svg, "Also write a log-log SVG plot");
    cmd->add_option("--starts", cfg.starts, "Optimizer starts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.max_iter, "Optimizer iteration limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", cfg.tol, "Optimizer gradient tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--likelihood", f.likelihood,
                    "continuous, interval, or auto (interval for integer degrees)")
        ->check(CLI::IsMember({"auto", "continuous", "interval"}));
    cmd->add_flag("--free-scale", cfg.free_scale,
                  "Fit a scale for exponentiated-burr and burr-mo");
    cmd->add_option("--bootstrap-B", f.bootstrap_b, "Bootstrap replicates")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--refit,!--no-refit", cfg.refit, "Refit each bootstrap replicate");
    cmd->add_option("--min-expected", cfg.min_expected, "Minimum expected count per bin")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", cfg.threads, "Bootstrap worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--regime", f.regime, "Lambda constraint regime")
      ->check(CLI::IsMember({"validity", "paper-compat"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compounded Burr fitting and comparison for degree distributions"};
  app.require_subcommand(1);
  cburr::RunConfig cfg;
  Flags f;

  auto* fit = app.add_subcommand("fit", "Fit models and write a report");
  add_common(fit, cfg, f, true);
  fit->add_option("--model", f.models, "Model family (repeatable; default cburr)");

  auto* compare = app.add_subcommand("compare", "Fit several families and rank them");
  add_common(compare, cfg, f, true);
  compare->add_option("--models", f.models, "Families to compare; \"all\" means the nine competitors (default: cburr and all nine)")
      ->delimiter(',');

  auto* gof = app.add_subcommand("gof", "Chi-square and bootstrap goodness of fit");
  add_common(gof, cfg, f, true);
  gof->add_option("--model", f.model, "Model family (default cburr)");
  gof->add_option("--params", f.params, "Use these parameters instead of fitting")
      ->delimiter(',');

  auto* sample = app.add_subcommand("sample", "Draw values from a model");
  add_common(sample, cfg, f, false);
  sample->add_option("--model", f.model, "Model family")->required();
  sample->add_option("--params", f.params, "Parameters in storage order")
      ->required()
      ->delimiter(',');
  sample->add_option("--n", cfg.sample_size, "Number of values")->required();
  sample->add_option("--out", cfg.out_dir, "Output file (default stdout)");
  sample->add_flag("--discretize", cfg.discretize,
                   "Round half up to degrees, redrawing values below 1");

  auto* fetch = app.add_subcommand("fetch", "Show where to get a dataset and verify a download");
  fetch->add_option("dataset", f.dataset, "Dataset name (omit to list)");
  fetch->add_option("--sha256", f.sha256, "Expected SHA-256 of the downloaded file");
  std::string fetch_file;
  fetch->add_option("--input", fetch_file, "Downloaded file to verify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*fetch) {
      if (f.dataset.empty()) {
        for (const auto& d : cburr::known_datasets()) {
          std::cout << d.name << '\t' << d.page_url << '\n';
        }
        return 0;
      }
      bool found = false;
      for (const auto& d : cburr::known_datasets()) {
        if (d.name == f.dataset) {
          std::cout << d.page_url << '\n';
          found = true;
        }
      }
      if (!found) {
        std::cout << "https://networkrepository.com/" << f.dataset << ".php\n";
      }
      std::cout << "cache directory: " << cburr::data_dir() << '\n';
      if (!fetch_file.empty()) {
        const std::string digest = sha256_file(fetch_file);
        std::cout << "sha256 " << digest << '\n';
        if (!f.sha256.empty() && digest != f.sha256) {
          std::cerr << "error: checksum mismatch for " << fetch_file << '\n';
          return 2;
        }
      } else if (!f.sha256.empty()) {
        throw cburr::DomainError("--sha256 needs --input");
      }
      return 0;
    }

    cfg.regime = cburr::regime_from_string(f.regime);
    cfg.stdev_divisor = cburr::stdev_divisor_from_string(f.stdev_divisor);
    cfg.input_format = cburr::input_format_from_string(f.format);
    if (f.likelihood != "auto") cfg.likelihood = cburr::likelihood_from_string(f.likelihood);
    if (!f.model.empty()) cfg.models = {f.model};
    if (!f.models.empty()) cfg.models = f.models;
    if (!f.params.empty()) cfg.params = f.params;

    nlohmann::json report;
    if (*fit) {
      cfg.command = "fit";
      cfg.bootstrap_b = f.bootstrap_b < 0 ? 0 : f.bootstrap_b;
      report = cburr::run_fit(cfg);
    } else if (*compare) {
      cfg.command = "compare";
      cfg.bootstrap_b = f.bootstrap_b < 0 ? 0 : f.bootstrap_b;
      report = cburr::run_compare(cfg);
    } else if (*gof) {
      cfg.command = "gof";
      cfg.bootstrap_b = f.bootstrap_b < 0 ? 1000 : f.bootstrap_b;
      if (cfg.models.empty()) cfg.models = {"cburr"};
      report = cburr::run_gof(cfg);
    } else if (*sample) {
      cfg.command = "sample";
      if (cfg.out_dir.empty() || cfg.out_dir == "-") {
        cburr::run_sample(cfg, std::cout);
      } else {
        std::ostringstream buf;
        cburr::run_sample(cfg, buf);
        std::ofstream out(cfg.out_dir, std::ios::binary);
        if (!out) throw cburr::DataError("cannot write " + cfg.out_dir);
        out << buf.str();
      }
      return 0;
    }
    for (const auto& w : report["warnings"]) {
      std::cerr << "warning: " << w.get<std::string>() << '\n';
    }
    if (cfg.out_dir.empty()) std::cout << cburr::dump_report(report);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cburr::exit_code_for(e);
  }
}
