#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbur/competitors.hpp"
#include "mbur/core.hpp"
#include "mbur/data_io.hpp"
#include "mbur/estimation.hpp"
#include "mbur/gof.hpp"
#include "mbur/rng.hpp"
#include "mbur/simulation.hpp"

namespace py = pybind11;
using namespace mbur;

namespace {

py::dict fit_to_dict(const FitResult& fr) {
  py::dict d;
  d["method"] = method_name(fr.method);
  d["converged"] = fr.converged;
  d["alpha"] = fr.estimate;
  d["se"] = fr.se;
  d["variance"] = fr.paper_variance;
  d["loglik"] = fr.loglik;
  d["ci_low"] = fr.ci_low;
  d["ci_high"] = fr.ci_high;
  d["message"] = fr.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_unitfit, m) {
  m.doc() = "Median-based unit Rayleigh distribution: core operations";

  m.def("pdf", [](double alpha, double y) { return pdf(Alpha(alpha), y); });
  m.def("log_pdf", [](double alpha, double y) { return log_pdf(Alpha(alpha), y); });
  m.def("cdf", [](double alpha, double y) { return cdf(Alpha(alpha), y); });
  m.def("quantile", [](double alpha, double u) { return quantile(Alpha(alpha), u); });
  m.def("hazard",
        [](double alpha, double y) { return reliability_functions(Alpha(alpha), y).hazard; });
  m.def("survival",
        [](double alpha, double y) { return reliability_functions(Alpha(alpha), y).survival; });
  m.def("mean_residual_life",
        [](double alpha, double y) { return mean_residual_life(Alpha(alpha), y); });
  m.def(
      "sample",
      [](double alpha, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return sample(Alpha(alpha), n, rng);
      },
      py::arg("alpha"), py::arg("n"), py::arg("seed") = 0);

  m.def("raw_moment", [](double alpha, int r) { return raw_moment(Alpha(alpha), r); });
  m.def("moments", [](double alpha) {
    const MomentSummary s = moment_summary(Alpha(alpha));
    py::dict d;
    d["mean"] = s.mean;
    d["variance"] = s.variance;
    d["skewness"] = s.skewness;
    d["kurtosis"] = s.kurtosis;
    d["cv"] = s.cv;
    return d;
  });
  m.def("gini", [](double alpha) { return gini(Alpha(alpha)); });
  m.def("stress_strength",
        [](double a1, double a2) { return stress_strength(Alpha(a1), Alpha(a2)); });
  m.def("renyi_entropy",
        [](double alpha, double gamma) { return renyi_entropy(Alpha(alpha), gamma); });
  m.def("mode", [](double alpha) -> py::object {
    const auto mo = mode(Alpha(alpha));
    if (!mo) return py::none();
    return py::float_(*mo);
  });

  m.def(
      "fit",
      [](const std::vector<double>& data, const std::string& method) {
        return fit_to_dict(fit(method_from_name(method), Sample(data)));
      },
      py::arg("data"), py::arg("method") = "mle");
  m.def(
      "fit_competitor",
      [](const std::vector<double>& data, const std::string& family) {
        const CompetitorFit cf = fit_mle_competitor(family_from_name(family), Sample(data));
        py::dict d;
        d["family"] = family;
        d["converged"] = cf.converged;
        d["estimates"] = cf.estimates;
        d["se"] = cf.se;
        d["loglik"] = cf.loglik;
        return d;
      },
      py::arg("data"), py::arg("family"));

  m.def(
      "gof",
      [](const std::vector<double>& data, const std::string& family,
         const std::vector<double>& params) {
        const Sample s(data);
        const auto dist = make_distribution(family_from_name(family), params);
        const CdfFn F = [&dist](double y) { return dist->cdf(y); };
        py::dict d;
        const double ks = ks_statistic(s, F);
        d["ks"] = ks;
        d["ks_pvalue"] = ks_pvalue(ks, s.size());
        d["ad"] = ad_statistic(s, F);
        d["cvm"] = cvm_statistic(s, F);
        return d;
      },
      py::arg("data"), py::arg("family"), py::arg("params"));

  m.def("dataset_names", []() { return builtin_names(); });
  m.def("dataset", [](const std::string& name) { return builtin(name).values; });
  m.def("describe", [](const std::vector<double>& data) {
    const DescriptiveStats s = descriptive_stats(data);
    py::dict d;
    d["min"] = s.min;
    d["mean"] = s.mean;
    d["std"] = s.std;
    d["skewness"] = s.skewness;
    d["kurtosis"] = s.kurtosis;
    d["p25"] = s.p25;
    d["p50"] = s.p50;
    d["p75"] = s.p75;
    d["max"] = s.max;
    return d;
  });

  m.def(
      "run_study",
      [](double alpha, const std::vector<std::size_t>& sizes, std::size_t replicates,
         const std::vector<std::string>& methods, std::uint64_t seed) {
        SimStudyConfig cfg;
        cfg.alpha_true = alpha;
        cfg.sample_sizes = sizes;
        cfg.replicates = replicates;
        for (const std::string& mname : methods) cfg.methods.push_back(method_from_name(mname));
        cfg.master_seed = seed;
        cfg.with_distribution_summary = false;
        const SimStudyTable t = run_study(cfg);
        py::list rows;
        for (const SimCell& c : t.cells) {
          py::dict d;
          d["method"] = method_name(c.method);
          d["n"] = c.n;
          d["mean"] = c.mean;
          d["se"] = c.se;
          d["aab"] = c.aab;
          d["mse"] = c.mse;
          d["rmse"] = c.rmse;
          d["mre"] = c.mre;
          d["replicates_used"] = c.replicates_used;
          d["failed"] = c.failed;
          rows.append(d);
        }
        return rows;
      },
      py::arg("alpha"), py::arg("sizes"), py::arg("replicates"), py::arg("methods"),
      py::arg("seed") = 0);
}
