// unitfit: command line front end for the MBUR library.
//
// Subcommands: fit, gof, simulate, dist, datasets. Output is a JSON envelope
// (key-sorted) or flat CSV. Exit codes: 0 ok, 1 usage, 2 data error,
// 3 convergence failure (the envelope is still printed with diagnostics).

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mbur/competitors.hpp"
#include "mbur/core.hpp"
#include "mbur/data_io.hpp"
#include "mbur/estimation.hpp"
#include "mbur/gof.hpp"
#include "mbur/simulation.hpp"

using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitConvergence = 3;

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json envelope(const std::string& command, json inputs_echo, json results,
              const std::vector<std::string>& warnings) {
  json env;
  env["schema_version"] = kSchemaVersion;
  env["command"] = command;
  env["inputs_echo"] = std::move(inputs_echo);
  env["results"] = std::move(results);
  env["warnings"] = warnings;
  return env;
}

void print_json(const json& env) { std::cout << env.dump(2) << "\n"; }

void print_kv_csv(const json& results, const std::string& prefix = "") {
  // flatten to field,value rows; nlohmann objects iterate key-sorted
  for (auto it = results.begin(); it != results.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_kv_csv(*it, key);
    } else if (it->is_number_float()) {
      std::cout << key << "," << fmt10(it->get<double>()) << "\n";
    } else if (it->is_string()) {
      std::cout << key << "," << it->get<std::string>() << "\n";
    } else {
      std::cout << key << "," << it->dump() << "\n";
    }
  }
}

std::vector<double> parse_params(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("bad parameter token: " + tok);
  }
  if (out.empty()) throw std::invalid_argument("empty parameter list");
  return out;
}

// grid spec: either "lo:hi:count" or a comma list of points
std::vector<double> parse_grid(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    double lo, hi;
    int count;
    char c1, c2;
    std::stringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2 ||
        !(hi > lo)) {
      throw std::invalid_argument("bad grid spec: " + spec);
    }
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
      out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
  }
  return parse_params(spec);
}

std::vector<std::string> param_names(mbur::Family f) {
  switch (f) {
    case mbur::Family::Mbur: return {"alpha"};
    case mbur::Family::Beta: return {"a", "b"};
    case mbur::Family::Kumaraswamy: return {"a", "b"};
    case mbur::Family::ToppLeone: return {"theta"};
    case mbur::Family::UnitLindley: return {"theta"};
  }
  return {};
}

json gof_block(const mbur::Sample& s, const mbur::UnitDistribution& dist,
               std::vector<std::string>& warnings) {
  auto F = [&dist](double y) { return dist.cdf(y); };
  int clips = 0;
  json g;
  g["ks"] = mbur::ks_statistic(s, F);
  g["ks_pvalue"] = mbur::ks_pvalue(g["ks"].get<double>(), s.size());
  g["ad"] = mbur::ad_statistic(s, F, &clips);
  g["cvm"] = mbur::cvm_statistic(s, F, &clips);
  if (clips > 0) {
    warnings.push_back("cdf values clipped away from 0/1 in " + std::to_string(clips) +
                       " terms");
  }
  return g;
}

json ic_block(double loglik, int k, std::size_t n) {
  const mbur::InfoCriteria ic = mbur::info_criteria(loglik, k, n);
  return {{"aic", ic.aic}, {"caic", ic.caic}, {"bic", ic.bic}, {"hqic", ic.hqic}};
}

std::uint64_t draw_seed(std::vector<std::string>& warnings) {
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  warnings.push_back("no --seed given, drew " + std::to_string(s));
  return s;
}

struct FitArgs {
  std::string data;
  std::string dist = "mbur";
  std::string method = "mle";
  double ci = 0.95;
  std::string format = "json";
};

int run_fit(const FitArgs& a) {
  const mbur::Family fam = mbur::family_from_name(a.dist);
  if (fam != mbur::Family::Mbur && a.method != "mle") {
    std::cerr << "unitfit fit: distribution '" << a.dist << "' supports only --method mle\n";
    return kExitUsage;
  }
  mbur::NamedDataset ds;
  try {
    ds = mbur::resolve_dataset(a.data);
  } catch (const std::exception& e) {
    std::cerr << "unitfit fit: " << e.what() << "\n";
    return kExitData;
  }
  const mbur::Sample s = ds.sample();
  std::vector<std::string> warnings;
  json results;
  bool converged = true;

  if (fam == mbur::Family::Mbur) {
    const mbur::FitResult fr =
        mbur::fit(mbur::method_from_name(a.method), s, {}, a.ci);
    converged = fr.converged;
    results["estimates"] = {{"alpha", fr.estimate}};
    results["se"] = {{"alpha", fr.se}};
    results["paper_variance"] = {{"alpha", fr.paper_variance}};
    results["loglik"] = fr.loglik;
    results["ci"] = {{"level", fr.ci_level}, {"low", fr.ci_low}, {"high", fr.ci_high}};
    results["ic"] = ic_block(fr.loglik, 1, s.size());
    results["converged"] = fr.converged;
    results["iterations"] = fr.iterations;
    if (!fr.message.empty()) results["message"] = fr.message;
    if (fr.converged) {
      const mbur::MburDist d(fr.estimate);
      results["gof"] = gof_block(s, d, warnings);
    }
  } else {
    const mbur::CompetitorFit cf = mbur::fit_mle_competitor(fam, s);
    converged = cf.converged;
    const std::vector<std::string> names = param_names(fam);
    json est, se, pv;
    for (std::size_t i = 0; i < cf.estimates.size(); ++i) {
      est[names[i]] = cf.estimates[i];
      se[names[i]] = cf.se[i];
      pv[names[i]] = cf.paper_variance[i];
    }
    results["estimates"] = est;
    results["se"] = se;
    results["paper_variance"] = pv;
    results["loglik"] = cf.loglik;
    results["converged"] = cf.converged;
    results["iterations"] = cf.iterations;
    if (!cf.message.empty()) results["message"] = cf.message;
    if (cf.converged) {
      auto d = mbur::make_distribution(fam, cf.estimates);
      results["ic"] = ic_block(cf.loglik, d->k(), s.size());
      results["gof"] = gof_block(s, *d, warnings);
    }
  }

  json inputs = {{"data", a.data}, {"dist", a.dist}, {"method", a.method},
                 {"ci", a.ci},     {"n", s.size()}};
  const json env = envelope("fit", inputs, results, warnings);
  if (a.format == "csv") {
    print_kv_csv(env["results"]);
  } else {
    print_json(env);
  }
  return converged ? kExitOk : kExitConvergence;
}

struct GofArgs {
  std::string data;
  std::string dist = "mbur";
  std::string params;
  std::size_t mc_reps = 0;
  std::string mode = "fixed";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
};

int run_gof(const GofArgs& a) {
  const mbur::Family fam = mbur::family_from_name(a.dist);
  mbur::NamedDataset ds;
  try {
    ds = mbur::resolve_dataset(a.data);
  } catch (const std::exception& e) {
    std::cerr << "unitfit gof: " << e.what() << "\n";
    return kExitData;
  }
  const mbur::Sample s = ds.sample();

  std::unique_ptr<mbur::UnitDistribution> dist;
  try {
    dist = mbur::make_distribution(fam, parse_params(a.params));
  } catch (const std::exception& e) {
    std::cerr << "unitfit gof: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> warnings;
  std::uint64_t seed = a.seed;
  if (!a.seed_given && a.mc_reps > 0) seed = draw_seed(warnings);

  json results;
  results["statistics"] = gof_block(s, *dist, warnings);
  if (a.mc_reps > 0) {
    const mbur::McMode mode =
        (a.mode == "refit") ? mbur::McMode::Refit : mbur::McMode::Fixed;
    json mc;
    for (mbur::GofStatistic stat :
         {mbur::GofStatistic::Ks, mbur::GofStatistic::Ad, mbur::GofStatistic::Cvm}) {
      const mbur::McReference ref =
          mbur::mc_reference_distribution(*dist, s.size(), stat, a.mc_reps, mode, seed);
      const std::string name = mbur::gof_statistic_name(stat);
      const double observed = results["statistics"][name].get<double>();
      json q;
      q["q025"] = ref.quantile(0.025);
      q["q05"] = ref.quantile(0.05);
      q["q10"] = ref.quantile(0.10);
      q["q90"] = ref.quantile(0.90);
      q["q95"] = ref.quantile(0.95);
      q["q975"] = ref.quantile(0.975);
      mc[name] = {{"pvalue", ref.pvalue(observed)},
                  {"quantiles", q},
                  {"replicates_used", ref.replicates_used},
                  {"failed_replicates", ref.failed_replicates}};
    }
    results["mc"] = mc;
  }

  json inputs = {{"data", a.data},       {"dist", a.dist}, {"params", a.params},
                 {"mc_reps", a.mc_reps}, {"mode", a.mode}, {"n", s.size()}};
  if (a.mc_reps > 0) inputs["seed"] = seed;
  const json env = envelope("gof", inputs, results, warnings);
  if (a.format == "csv") {
    print_kv_csv(env["results"]);
  } else {
    print_json(env);
  }
  return kExitOk;
}

struct SimArgs {
  double alpha = 0.0;
  std::string sizes = "20,80,160,260,500";
  std::size_t reps = 1000;
  std::string methods = "all";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
  bool summary = true;
};

int run_simulate(const SimArgs& a) {
  mbur::SimStudyConfig cfg;
  cfg.alpha_true = a.alpha;
  cfg.replicates = a.reps;
  cfg.with_distribution_summary = a.summary;
  for (double v : parse_params(a.sizes)) {
    if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      std::cerr << "unitfit simulate: bad sample size in --sizes\n";
      return kExitUsage;
    }
    cfg.sample_sizes.push_back(static_cast<std::size_t>(v));
  }
  if (a.methods == "all") {
    cfg.methods = mbur::all_methods();
  } else {
    std::stringstream ss(a.methods);
    std::string tok;
    while (std::getline(ss, tok, ',')) cfg.methods.push_back(mbur::method_from_name(tok));
  }
  std::vector<std::string> warnings;
  cfg.master_seed = a.seed_given ? a.seed : draw_seed(warnings);

  const mbur::SimStudyTable table = mbur::run_study(cfg);

  if (a.format == "csv") {
    std::cout << "method,n,mean,se,aab,mse,rmse,mre,replicates_used,failed\n";
    for (const mbur::SimCell& c : table.cells) {
      std::cout << mbur::method_name(c.method) << "," << c.n << "," << fmt10(c.mean) << ","
                << fmt10(c.se) << "," << fmt10(c.aab) << "," << fmt10(c.mse) << ","
                << fmt10(c.rmse) << "," << fmt10(c.mre) << "," << c.replicates_used << ","
                << c.failed << "\n";
    }
    return kExitOk;
  }

  json cells = json::array();
  for (const mbur::SimCell& c : table.cells) {
    json jc = {{"method", mbur::method_name(c.method)},
               {"n", c.n},
               {"mean", c.mean},
               {"se", c.se},
               {"aab", c.aab},
               {"mse", c.mse},
               {"rmse", c.rmse},
               {"mre", c.mre},
               {"replicates_used", c.replicates_used},
               {"failed", c.failed},
               {"usable", c.usable}};
    if (a.summary && c.replicates_used >= 10) {
      jc["distribution"] = {{"q025", c.summary.q025},
                            {"q975", c.summary.q975},
                            {"skewness", c.summary.skewness},
                            {"kurtosis", c.summary.kurtosis},
                            {"lilliefors_reject_5pct", c.summary.lilliefors_reject_5pct},
                            {"lilliefors_reject_1pct", c.summary.lilliefors_reject_1pct}};
    }
    cells.push_back(std::move(jc));
  }
  json results = {{"alpha_true", table.alpha_true},
                  {"replicates", table.replicates},
                  {"cells", cells}};
  json inputs = {{"alpha", a.alpha},     {"sizes", a.sizes},
                 {"reps", a.reps},       {"methods", a.methods},
                 {"seed", cfg.master_seed}};
  print_json(envelope("simulate", inputs, results, warnings));
  return kExitOk;
}

struct DistArgs {
  std::string dist = "mbur";
  std::string params;
  std::string eval;
  std::string at;
  std::string format = "csv";
};

int run_dist(const DistArgs& a) {
  const mbur::Family fam = mbur::family_from_name(a.dist);
  std::unique_ptr<mbur::UnitDistribution> dist;
  std::vector<double> grid;
  try {
    dist = mbur::make_distribution(fam, parse_params(a.params));
    grid = parse_grid(a.at);
  } catch (const std::exception& e) {
    std::cerr << "unitfit dist: " << e.what() << "\n";
    return kExitUsage;
  }
  if ((a.eval == "mrl") && fam != mbur::Family::Mbur) {
    std::cerr << "unitfit dist: --eval mrl is available for mbur only\n";
    return kExitUsage;
  }

  std::vector<std::pair<double, double>> points;
  try {
    if (a.eval == "ttt") {
      points = mbur::ttt_theoretical(*dist, grid);
    } else {
      for (double x : grid) {
        double v;
        if (a.eval == "pdf") {
          v = dist->pdf(x);
        } else if (a.eval == "cdf") {
          v = dist->cdf(x);
        } else if (a.eval == "quantile") {
          v = dist->quantile(x);
        } else if (a.eval == "hazard") {
          const double S = 1.0 - dist->cdf(x);
          if (!(S > 0.0)) throw std::domain_error("hazard undefined: survival underflow");
          v = dist->pdf(x) / S;
        } else {  // mrl
          v = mbur::mean_residual_life(mbur::Alpha(dist->params()[0]), x);
        }
        points.emplace_back(x, v);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "unitfit dist: " << e.what() << "\n";
    return kExitData;
  }

  if (a.format == "json") {
    json pts = json::array();
    for (const auto& [x, v] : points) pts.push_back({{"x", x}, {"value", v}});
    json inputs = {{"dist", a.dist}, {"params", a.params}, {"eval", a.eval}, {"at", a.at}};
    print_json(envelope("dist", inputs, {{"points", pts}}, {}));
  } else {
    std::cout << "x," << a.eval << "\n";
    for (const auto& [x, v] : points) {
      std::cout << fmt10(x) << "," << fmt10(v) << "\n";
    }
  }
  return kExitOk;
}

int run_datasets(const std::string& action, const std::string& name,
                 const std::string& format) {
  json results;
  try {
    if (action == "list") {
      json items = json::array();
      for (const std::string& nm : mbur::builtin_names()) {
        const mbur::NamedDataset& ds = mbur::builtin(nm);
        items.push_back({{"name", ds.name}, {"n", ds.n()}, {"source", ds.source}});
      }
      results["datasets"] = items;
    } else if (action == "show") {
      const mbur::NamedDataset& ds = mbur::builtin(name);
      results = {{"name", ds.name}, {"n", ds.n()}, {"source", ds.source},
                 {"values", ds.values}};
    } else {  // stats
      const mbur::NamedDataset& ds = mbur::builtin(name);
      const mbur::DescriptiveStats st = mbur::descriptive_stats(ds.values);
      results = {{"name", ds.name},
                 {"n", ds.n()},
                 {"min", st.min},
                 {"mean", st.mean},
                 {"std", st.std},
                 {"skewness", st.skewness},
                 {"kurtosis", st.kurtosis},
                 {"p25", st.p25},
                 {"p50", st.p50},
                 {"p75", st.p75},
                 {"max", st.max}};
    }
  } catch (const std::exception& e) {
    std::cerr << "unitfit datasets: " << e.what() << "\n";
    return kExitData;
  }
  json inputs = {{"action", action}};
  if (!name.empty()) inputs["name"] = name;
  const json env = envelope("datasets", inputs, results, {});
  if (format == "csv" && action == "show") {
    std::cout << "value\n";
    for (const auto& v : env["results"]["values"]) std::cout << fmt10(v.get<double>()) << "\n";
  } else if (format == "csv") {
    print_kv_csv(env["results"]);
  } else {
    print_json(env);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MBUR distribution toolkit"};
  app.require_subcommand(1);
  const std::vector<std::string> kFamilies = {"mbur", "beta", "kumaraswamy", "topp-leone",
                                              "unit-lindley"};
  const std::vector<std::string> kMethods = {"mom", "mle", "mps", "ad",
                                             "percentile", "cvm", "ls", "wls"};

  FitArgs fit_args;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a distribution to a dataset");
  fit_cmd->add_option("--data", fit_args.data, "builtin dataset name or CSV path")
      ->required();
  fit_cmd->add_option("--dist", fit_args.dist)->check(CLI::IsMember(kFamilies));
  fit_cmd->add_option("--method", fit_args.method)->check(CLI::IsMember(kMethods));
  fit_cmd->add_option("--ci", fit_args.ci)->check(CLI::Range(1e-6, 1.0 - 1e-6));
  fit_cmd->add_option("--format", fit_args.format)->check(CLI::IsMember({"json", "csv"}));

  GofArgs gof_args;
  CLI::App* gof_cmd = app.add_subcommand("gof", "Goodness of fit at given parameters");
  gof_cmd->add_option("--data", gof_args.data)->required();
  gof_cmd->add_option("--dist", gof_args.dist)->check(CLI::IsMember(kFamilies));
  gof_cmd->add_option("--params", gof_args.params, "comma separated")->required();
  gof_cmd->add_option("--mc-reps", gof_args.mc_reps, "0 disables the MC reference");
  gof_cmd->add_option("--mode", gof_args.mode)->check(CLI::IsMember({"fixed", "refit"}));
  CLI::Option* gof_seed = gof_cmd->add_option("--seed", gof_args.seed);
  gof_cmd->add_option("--format", gof_args.format)->check(CLI::IsMember({"json", "csv"}));

  SimArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Replicated estimator study");
  sim_cmd->add_option("--alpha", sim_args.alpha)->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--sizes", sim_args.sizes, "comma separated sample sizes");
  sim_cmd->add_option("--reps", sim_args.reps)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--methods", sim_args.methods, "comma separated or 'all'");
  CLI::Option* sim_seed = sim_cmd->add_option("--seed", sim_args.seed);
  sim_cmd->add_option("--format", sim_args.format)->check(CLI::IsMember({"json", "csv"}));
  sim_cmd->add_flag("--no-summary", "skip the estimator distribution summaries");

  DistArgs dist_args;
  CLI::App* dist_cmd = app.add_subcommand("dist", "Evaluate a distribution on a grid");
  dist_cmd->add_option("--dist", dist_args.dist)->check(CLI::IsMember(kFamilies));
  dist_cmd->add_option("--params", dist_args.params)->required();
  dist_cmd->add_option("--eval", dist_args.eval)
      ->required()
      ->check(CLI::IsMember({"pdf", "cdf", "quantile", "hazard", "mrl", "ttt"}));
  dist_cmd->add_option("--at", dist_args.at, "lo:hi:count or comma list")->required();
  dist_cmd->add_option("--format", dist_args.format)->check(CLI::IsMember({"json", "csv"}));

  std::string ds_name, ds_format = "json";
  CLI::App* data_cmd = app.add_subcommand("datasets", "Embedded dataset access");
  data_cmd->require_subcommand(1);
  CLI::App* ds_list = data_cmd->add_subcommand("list", "names and sizes");
  CLI::App* ds_show = data_cmd->add_subcommand("show", "dump values");
  ds_show->add_option("name", ds_name)->required();
  CLI::App* ds_stats = data_cmd->add_subcommand("stats", "descriptive statistics");
  ds_stats->add_option("name", ds_name)->required();
  for (CLI::App* c : {ds_list, ds_show, ds_stats}) {
    c->add_option("--format", ds_format)->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  gof_args.seed_given = gof_seed->count() > 0;
  sim_args.seed_given = sim_seed->count() > 0;
  sim_args.summary = sim_cmd->count("--no-summary") == 0;

  try {
    if (fit_cmd->parsed()) return run_fit(fit_args);
    if (gof_cmd->parsed()) return run_gof(gof_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (dist_cmd->parsed()) return run_dist(dist_args);
    if (data_cmd->parsed()) {
      const std::string action =
          ds_list->parsed() ? "list" : (ds_show->parsed() ? "show" : "stats");
      return run_datasets(action, ds_name, ds_format);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "unitfit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "unitfit: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
