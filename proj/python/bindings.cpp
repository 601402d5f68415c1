#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cburr/app.hpp"
#include "cburr/burr.hpp"
#include "cburr/degree_io.hpp"
#include "cburr/error.hpp"
#include "cburr/estimate.hpp"
#include "cburr/gof.hpp"
#include "cburr/moments.hpp"

namespace py = pybind11;

namespace {

cburr::CBurrParams make_params(double gamma, double alpha, double c, double lambda,
                               const std::string& regime) {
  return {gamma, alpha, c, lambda, cburr::regime_from_string(regime)};
}

template <class F>
py::array_t<double> apply(F f, const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
  py::array_t<double> out(y.request().shape);
  auto in = y.unchecked();
  auto* dst = static_cast<double*>(out.request().ptr);
  const double* src = in.data(0);
  for (py::ssize_t i = 0; i < y.size(); ++i) dst[i] = f(src[i]);
  return out;
}

cburr::FitConfig fit_config(int starts, const std::string& regime, std::uint64_t seed,
                            const std::string& likelihood, bool free_scale) {
  cburr::FitConfig cfg;
  cfg.starts = starts;
  cfg.regime = cburr::regime_from_string(regime);
  cfg.seed = seed;
  cfg.likelihood = cburr::likelihood_from_string(likelihood);
  cfg.free_scale = free_scale;
  return cfg;
}

std::string fit_json(const std::vector<double>& values, const std::string& model, int starts,
                     const std::string& regime, std::uint64_t seed, const std::string& likelihood,
                     bool free_scale) {
  const auto sample = cburr::WeightedSample::from_values(values);
  const auto fit = cburr::fit_competitor(cburr::family_from_name(model), sample,
                                         fit_config(starts, regime, seed, likelihood, free_scale));
  return cburr::fit_to_json(fit).dump();
}

std::string gof_json(const std::vector<double>& values, const std::string& model,
                     const std::vector<double>& params, const std::string& regime, int replicates,
                     bool refit, double min_expected, std::uint64_t seed,
                     const std::string& likelihood) {
  const auto sample = cburr::WeightedSample::from_values(values);
  const cburr::ModelSpec spec(cburr::family_from_name(model), params,
                              cburr::regime_from_string(regime));
  cburr::BootstrapConfig cfg;
  cfg.replicates = replicates;
  cfg.refit = refit;
  cfg.min_expected = min_expected;
  cfg.seed = seed;
  cfg.fit = fit_config(1, regime, seed, likelihood, false);
  return cburr::gof_to_json(cburr::gof_report(spec, sample, cfg)).dump();
}

std::string compare_json(const std::string& path, const std::vector<std::string>& models,
                         int starts, const std::string& regime, std::uint64_t seed,
                         const std::string& likelihood) {
  cburr::RunConfig cfg;
  cfg.command = "compare";
  cfg.inputs = {path};
  cfg.models = models;
  cfg.starts = starts;
  cfg.regime = cburr::regime_from_string(regime);
  cfg.seed = seed;
  if (likelihood != "auto") cfg.likelihood = cburr::likelihood_from_string(likelihood);
  return cburr::run_compare(cfg).dump();
}

}  // namespace

PYBIND11_MODULE(_cburr, m) {
  m.doc() = "Compounded Burr distribution: evaluation, sampling, moments, fitting, goodness of fit";

  auto base = py::register_exception<cburr::Error>(m, "CBurrError", PyExc_RuntimeError);
  py::register_exception<cburr::DataError>(m, "DataError", base.ptr());
  py::register_exception<cburr::NumericError>(m, "NumericError", base.ptr());
  py::register_exception<cburr::FitFailure>(m, "FitFailure", base.ptr());
  py::register_exception<cburr::MomentNonexistenceError>(m, "MomentNonexistenceError",
                                                         base.ptr());
  py::register_exception<cburr::DomainError>(m, "DomainError", PyExc_ValueError);


#define CBURR_POINTWISE(name, fn)                                                              \
  m.def(                                                                                       \
      name,                                                                                    \
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y, double gamma, \
         double alpha, double c, double lam, const std::string& regime) {                      \
        const cburr::CBurrParams p = make_params(gamma, alpha, c, lam, regime);                \
        return apply([&p](double v) { return fn(p, v); }, y);                                  \
      },                                                                                       \
      py::arg("y"), py::arg("gamma"), py::arg("alpha"), py::arg("c"), py::arg("lam"),          \
      py::arg("regime") = "validity")

  CBURR_POINTWISE("pdf", cburr::cburr_pdf);
  CBURR_POINTWISE("cdf", cburr::cburr_cdf);
  CBURR_POINTWISE("survival", cburr::cburr_survival);
  CBURR_POINTWISE("hazard", cburr::cburr_hazard);
  CBURR_POINTWISE("quantile", cburr::cburr_quantile);
#undef CBURR_POINTWISE

  m.def(
      "sample",
      [](const std::string& model, const std::vector<double>& params, std::size_t n,
         std::uint64_t seed, const std::string& regime) {
        const cburr::ModelSpec spec(cburr::family_from_name(model), params,
                                    cburr::regime_from_string(regime));
        cburr::Rng rng(seed);
        return spec.sample(n, rng);
      },
      py::arg("model"), py::arg("params"), py::arg("n"), py::arg("seed") = 1,
      py::arg("regime") = "validity");

  m.def(
      "moment",
      [](double gamma, double alpha, double c, double lam, double r) {
        return cburr::cburr_moment(make_params(gamma, alpha, c, lam, "validity"), r).value;
      },
      py::arg("gamma"), py::arg("alpha"), py::arg("c"), py::arg("lam"), py::arg("r") = 1.0);
  m.def(
      "mrl",
      [](double gamma, double alpha, double c, double lam, double t) {
        return cburr::cburr_mrl(make_params(gamma, alpha, c, lam, "validity"), t).value;
      },
      py::arg("gamma"), py::arg("alpha"), py::arg("c"), py::arg("lam"), py::arg("t"));

  m.def(
      "loglik",
      [](const std::vector<double>& values, double gamma, double alpha, double c, double lam,
         const std::string& regime) {
        const auto sample = cburr::WeightedSample::from_values(values);
        return cburr::cburr_loglik({lam, c, alpha, gamma}, sample,
                                   cburr::regime_from_string(regime));
      },
      py::arg("values"), py::arg("gamma"), py::arg("alpha"), py::arg("c"), py::arg("lam"),
      py::arg("regime") = "validity");

  m.def("_fit_json", &fit_json, py::arg("values"), py::arg("model") = "cburr",
        py::arg("starts") = 5, py::arg("regime") = "validity", py::arg("seed") = 1,
        py::arg("likelihood") = "continuous", py::arg("free_scale") = false);
  m.def("_gof_json", &gof_json, py::arg("values"), py::arg("model"), py::arg("params"),
        py::arg("regime") = "validity", py::arg("replicates") = 0, py::arg("refit") = true,
        py::arg("min_expected") = 5.0, py::arg("seed") = 1, py::arg("likelihood") = "interval");
  m.def("_compare_json", &compare_json, py::arg("path"), py::arg("models"),
        py::arg("starts") = 5, py::arg("regime") = "validity", py::arg("seed") = 1,
        py::arg("likelihood") = "auto");

  m.def(
      "degree_histogram",
      [](const std::string& text, bool directed, bool dedupe, bool drop_self_loops,
         int loop_degree) {
        std::istringstream in(text);
        cburr::ParseOptions po;
        po.directed = directed;
        po.dedupe = dedupe;
        po.drop_self_loops = drop_self_loops;
        cburr::DegreeOptions dopt;
        dopt.loop_degree = loop_degree;
        return cburr::degrees(cburr::parse_edge_list(in, po), dopt).histogram;
      },
      py::arg("text"), py::arg("directed") = false, py::arg("dedupe") = false,
      py::arg("drop_self_loops") = false, py::arg("loop_degree") = 2);

  m.def(
      "metrics",
      [](const std::vector<double>& observed, const std::vector<double>& expected) {
        cburr::FrequencyTable t;
        for (std::size_t i = 0; i < observed.size(); ++i) {
          t.degrees.push_back(static_cast<long long>(i + 1));
        }
        t.observed = observed;
        t.expected = expected;
        for (double o : observed) t.n += o;
        py::dict d;
        d["rmse"] = cburr::rmse(t);
        d["mae"] = cburr::mae(t);
        d["kld"] = cburr::kld(t);
        return d;
      },
      py::arg("observed"), py::arg("expected"));

  m.def("families", [] {
    std::vector<std::string> out;
    for (auto f : cburr::all_families()) out.emplace_back(cburr::family_name(f));
    return out;
  });
  m.attr("REPORT_SCHEMA_VERSION") = cburr::kReportSchemaVersion;
}
