// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mbur/competitors.hpp"
#include "mbur/core.hpp"
#include "mbur/data_io.hpp"
#include "mbur/estimation.hpp"
#include "mbur/gof.hpp"
#include "mbur/rng.hpp"
#include "mbur/simulation.hpp"
#include "quad_oracle.h"

using namespace mbur;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream msg;
    msg << what << ": got " << got << ", expected " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, msg.str());
  }
  void rel(double got, double want, double reltol, const std::string& what) {
    near(got, want, reltol * std::abs(want), what);
  }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool criterion1(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    const char* name;
    double min, mean, std, skew, kurt, p25, p50, p75, max;
  };
  // reference descriptive tables; tolerance follows the printed precision
  const std::vector<Row> rows = {
      {"dwellings", 0.001, 0.0345, 0.056, 2.5981, 10.9552, 0.0032, 0.007, 0.0455, 0.259},
      {"quality", 0.77, 0.9005, 0.064, -0.9147, 2.6716, 0.865, 0.92, 0.95, 0.98},
      {"education", 0.42, 0.7894, 0.1504, -1.3554, 3.9461, 0.75, 0.84, 0.895, 0.94},
      {"flood", 0.26, 0.4225, 0.1244, 1.1625, 4.2363, 0.33, 0.405, 0.465, 0.74},
      {"pumps", 0.0062, 0.1578, 0.1931, 1.4614, 3.9988, 0.0292, 0.0614, 0.21, 0.656},
  };
  for (const Row& r : rows) {
    const DescriptiveStats s = descriptive_stats(builtin(r.name).values);
    const std::string tag = std::string("stats/") + r.name;
    c.near(s.min, r.min, 1e-10, tag + " min");
    c.near(s.mean, r.mean, 1e-4, tag + " mean");
    c.near(s.std, r.std, 6e-4, tag + " std");
    c.near(s.skewness, r.skew, 1e-4, tag + " skewness");
    c.near(s.kurtosis, r.kurt, 1e-4, tag + " kurtosis");
    c.near(s.p25, r.p25, 1e-4, tag + " p25");
    c.near(s.p50, r.p50, 1e-4, tag + " p50");
    c.near(s.p75, r.p75, 1e-4, tag + " p75");
    c.near(s.max, r.max, 1e-10, tag + " max");
  }
  c.expect(seconds_since(t0) < 1.0, "descriptive statistics took over 1 s");
  return c.ok;
}

bool criterion2(Checker& c) {
  struct Row {
    const char* name;
    double alpha, alpha_tol, ll, se;  // ll/se < 0 means unchecked
  };
  const std::vector<Row> rows = {
      {"quality", 0.3591, 5e-4, 30.0395, 0.0063},
      {"pumps", 1.7886, 1e-3, 19.9310, -1.0},
      {"dwellings", 2.3519, 1e-3, -1.0, -1.0},
      {"education", 0.5556, 1e-3, -1.0, -1.0},
      {"flood", 1.0443, 1e-3, -1.0, -1.0},
  };
  for (const Row& r : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const FitResult fr = fit_mle(builtin(r.name).sample());
    const std::string tag = std::string("mle/") + r.name;
    c.expect(fr.converged, tag + " did not converge");
    c.near(fr.estimate, r.alpha, r.alpha_tol, tag + " alpha");
    if (r.ll > 0.0) c.near(fr.loglik, r.ll, 5e-3, tag + " loglik");
    if (r.se > 0.0) c.near(fr.se, r.se, 5e-4, tag + " se");
    c.expect(seconds_since(t0) < 1.0, tag + " took over 1 s");
  }
  return c.ok;
}

bool criterion3(Checker& c) {
  struct Row {
    const char* tag;
    double ll;
    int k;
    std::size_t n;
    double aic, caic, bic, hqic;
  };
  const std::vector<Row> rows = {
      {"quality/beta", 30.2528, 2, 20, -56.5056, -55.7997, -54.5141, -56.1168},
      {"quality/kumaraswamy", 30.3637, 2, 20, -56.7274, -56.0215, -54.7359, -56.3386},
      {"quality/mbur", 30.0395, 1, 20, -58.079, -57.8567, -57.0832, -57.8846},
      {"quality/topp-leone", 29.3398, 1, 20, -56.6796, -56.4574, -55.6839, -56.4852},
      {"quality/unit-lindley", 29.6873, 1, 20, -57.3746, -57.1523, -56.3788, -57.1802},
      {"pumps/beta", 20.0285, 2, 23, -36.0571, -35.4571, -33.7861, -35.4859},
      {"pumps/kumaraswamy", 20.3296, 2, 23, -36.6592, -36.0592, -34.3882, -36.0881},
      {"pumps/mbur", 19.9310, 1, 23, -37.862, -37.6712, -36.7262, -37.5764},
      {"pumps/topp-leone", 18.7827, 1, 23, -35.5653, -35.3749, -34.4298, -35.2798},
      {"pumps/unit-lindley", 14.5035, 1, 23, -27.007, -26.8165, -25.8715, -26.7214},
      {"dwellings/beta", 78.7767, 2, 31, -153.5535, -153.1249, -150.6855, -152.6186},
      {"dwellings/kumaraswamy", 79.9489, 2, 31, -155.8979, -155.4693, -153.0299, -154.963},
      {"dwellings/mbur", 72.6528, 1, 31, -143.3057, -143.1678, -141.8717, -142.8382},
      {"dwellings/topp-leone", 67.7965, 1, 31, -133.593, -133.4551, -132.159, -133.1255},
      {"dwellings/unit-lindley", 71.2959, 1, 31, -140.592, -140.454, -139.158, -140.1243},
      {"education/beta", 25.3076, 2, 36, -46.6152, -46.2516, -43.4482, -45.5098},
      {"education/kumaraswamy", 25.7968, 2, 36, -47.5937, -47.23, -44.4266, -46.4883},
      {"education/mbur", 25.4357, 1, 36, -48.8713, -48.7537, -47.2878, -48.3186},
      {"education/topp-leone", 21.2862, 1, 36, -40.5725, -40.4548, -38.9889, -40.0198},
      {"education/unit-lindley", 29.4661, 1, 36, -56.9322, -56.8145, -55.3487, -56.3795},
      {"flood/beta", 14.1836, 2, 20, -24.3671, -23.6613, -22.3757, -23.9784},
      {"flood/kumaraswamy", 12.9733, 2, 20, -21.9465, -21.2407, -19.9551, -21.5578},
      {"flood/mbur", 6.4617, 1, 20, -10.9233, -10.7011, -9.9276, -10.7289},
      {"flood/topp-leone", 7.3814, 1, 20, -12.7627, -12.5405, -11.767, -12.5684},
      {"flood/unit-lindley", 7.1727, 1, 20, -12.3454, -12.1231, -11.3496, -12.151},
  };
  for (const Row& r : rows) {
    const InfoCriteria ic = info_criteria(r.ll, r.k, r.n);
    c.near(ic.aic, r.aic, 0.01, std::string(r.tag) + " aic");
    c.near(ic.caic, r.caic, 0.01, std::string(r.tag) + " caic");
    c.near(ic.bic, r.bic, 0.01, std::string(r.tag) + " bic");
    c.near(ic.hqic, r.hqic, 0.01, std::string(r.tag) + " hqic");
  }
  return c.ok;
}

bool criterion4(Checker& c) {
  const auto run = [&](const char* name, double alpha, double ks, double ad, double cvm) {
    const Sample s = builtin(name).sample();
    const CdfFn F = [alpha](double y) { return cdf(Alpha(alpha), y); };
    c.near(ks_statistic(s, F), ks, 1e-3, std::string(name) + " ks");
    c.near(ad_statistic(s, F), ad, 1e-3, std::string(name) + " ad");
    c.near(cvm_statistic(s, F), cvm, 1e-3, std::string(name) + " cvm");
  };
  run("quality", 0.3591, 0.1309, 0.3184, 0.0407);
  run("pumps", 1.7886, 0.1584, 0.6703, 0.1253);
  return c.ok;
}

bool criterion5(Checker& c) {
  const Sample quality = builtin("quality").sample();
  const Sample pumps = builtin("pumps").sample();

  const CompetitorFit beta_q = fit_mle_competitor(Family::Beta, quality);
  c.rel(beta_q.estimates[0], 21.7353, 0.05, "quality beta a");
  c.rel(beta_q.estimates[1], 2.4061, 0.05, "quality beta b");
  const CompetitorFit kum_q = fit_mle_competitor(Family::Kumaraswamy, quality);
  c.rel(kum_q.estimates[0], 16.5447, 0.05, "quality kumaraswamy a");
  c.rel(kum_q.estimates[1], 2.772, 0.05, "quality kumaraswamy b");
  const CompetitorFit tl_q = fit_mle_competitor(Family::ToppLeone, quality);
  c.near(tl_q.estimates[0], 71.2975, 0.01, "quality topp-leone theta");
  const CompetitorFit ul_q = fit_mle_competitor(Family::UnitLindley, quality);
  c.near(ul_q.estimates[0], 0.1334, 1e-3, "quality unit-lindley theta");
  c.near(ul_q.loglik, 29.6873, 0.01, "quality unit-lindley loglik");

  const CompetitorFit beta_p = fit_mle_competitor(Family::Beta, pumps);
  c.rel(beta_p.estimates[0], 0.6307, 0.05, "pumps beta a");
  c.rel(beta_p.estimates[1], 3.2318, 0.05, "pumps beta b");
  const CompetitorFit kum_p = fit_mle_competitor(Family::Kumaraswamy, pumps);
  c.rel(kum_p.estimates[0], 0.6766, 0.05, "pumps kumaraswamy a");
  c.rel(kum_p.estimates[1], 2.936, 0.05, "pumps kumaraswamy b");
  const CompetitorFit tl_p = fit_mle_competitor(Family::ToppLeone, pumps);
  c.near(tl_p.estimates[0], 0.4891, 0.01, "pumps topp-leone theta");
  const CompetitorFit ul_p = fit_mle_competitor(Family::UnitLindley, pumps);
  c.near(ul_p.estimates[0], 4.1495, 1e-3, "pumps unit-lindley theta");
  c.near(ul_p.loglik, 14.5035, 0.01, "pumps unit-lindley loglik");
  return c.ok;
}

bool criterion6(Checker& c) {
  c.near(ks_pvalue(0.1309, 20), 0.8399, 0.05, "quality ks p-value");
  c.near(ks_pvalue(0.1584, 23), 0.5575, 0.05, "pumps ks p-value");
  return c.ok;
}

bool criterion7(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const MburDist quality_fit(0.3591);
  const McReference ad_ref =
      mc_reference_distribution(quality_fit, 20, GofStatistic::Ad, 10000, McMode::Fixed, 2024);
  c.rel(ad_ref.quantile(0.95), 2.4433, 0.10, "ad 95th critical value");
  c.rel(ad_ref.quantile(0.975), 3.0146, 0.10, "ad 97.5th critical value");
  const McReference cvm_ref =
      mc_reference_distribution(quality_fit, 20, GofStatistic::Cvm, 10000, McMode::Fixed, 2024);
  c.rel(cvm_ref.quantile(0.95), 0.4578, 0.10, "cvm 95th critical value");
  c.rel(cvm_ref.quantile(0.975), 0.5781, 0.10, "cvm 97.5th critical value");

  const MburDist pumps_fit(1.7886);
  const McReference ad_p =
      mc_reference_distribution(pumps_fit, 23, GofStatistic::Ad, 10000, McMode::Fixed, 2024);
  c.rel(ad_p.quantile(0.025), 0.2309, 0.15, "ad 2.5th critical value");
  const McReference cvm_p =
      mc_reference_distribution(pumps_fit, 23, GofStatistic::Cvm, 10000, McMode::Fixed, 2024);
  c.rel(cvm_p.quantile(0.025), 0.03, 0.15, "cvm 2.5th critical value");
  c.expect(seconds_since(t0) < 30.0, "critical values took over 30 s");
  return c.ok;
}

bool criterion8(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();
  SimStudyConfig cfg;
  cfg.sample_sizes = {20, 80, 160, 260, 500};
  cfg.replicates = 1000;
  cfg.methods = all_methods();
  cfg.master_seed = 2024;
  cfg.with_distribution_summary = false;

  const auto cell = [&](const SimStudyTable& t, Method m, std::size_t n) -> const SimCell& {
    for (const SimCell& cc : t.cells) {
      if (cc.method == m && cc.n == n) return cc;
    }
    throw std::logic_error("missing cell");
  };
  const auto check_monotone = [&](const SimStudyTable& t, const std::string& tag) {
    for (Method m : cfg.methods) {
      for (std::size_t j = 1; j < cfg.sample_sizes.size(); ++j) {
        const SimCell& prev = cell(t, m, cfg.sample_sizes[j - 1]);
        const SimCell& cur = cell(t, m, cfg.sample_sizes[j]);
        const std::string where =
            tag + "/" + method_name(m) + " n=" + std::to_string(cur.n);
        c.expect(cur.aab < prev.aab, where + " aab not decreasing");
        c.expect(cur.mse < prev.mse, where + " mse not decreasing");
        c.expect(cur.mre < prev.mre, where + " mre not decreasing");
      }
    }
  };

  cfg.alpha_true = 2.5;
  const SimStudyTable high = run_study(cfg);
  c.near(cell(high, Method::Mle, 500).mean, 2.4991, 0.01, "alpha 2.5 mle mean at n=500");
  c.rel(cell(high, Method::Mle, 500).mse, 0.0017, 0.40, "alpha 2.5 mle mse at n=500");
  c.near(cell(high, Method::Mom, 500).mean, 2.5028, 0.015, "alpha 2.5 mom mean at n=500");
  c.near(cell(high, Method::Percentile, 20).mean, 2.3617, 0.05,
         "alpha 2.5 percentile mean at n=20");
  check_monotone(high, "alpha 2.5");

  cfg.alpha_true = 0.5;
  const SimStudyTable low = run_study(cfg);
  c.near(cell(low, Method::Mle, 500).mean, 0.4995, 0.005, "alpha 0.5 mle mean at n=500");
  c.expect(cell(low, Method::Mle, 500).mse <= 2e-4, "alpha 0.5 mle mse at n=500 too large");
  check_monotone(low, "alpha 0.5");

  c.expect(seconds_since(t0) < 300.0, "simulation grid took over 5 min");
  return c.ok;
}

bool criterion9(Checker& c) {
  // density normalization via substitution quadrature
  for (double a : {0.1, 0.5, 1.0, 1.5, 2.5, 5.0}) {
    Alpha al(a);
    const double s = al.sq();
    const double total = quad_oracle::integrate(
        [&](double v) {
          const double y = std::pow(v, s);
          if (y < 1e-290 || y > 1.0 - 1e-15) return 0.0;
          return pdf(al, y) * s * std::pow(v, s - 1.0);
        },
        0.0, 1.0);
    c.expect(std::abs(total - 1.0) < 1e-8, "pdf normalization at alpha " + std::to_string(a));
  }
  // quantile round trip
  for (double a : {0.5, 1.0, 2.5}) {
    for (int i = 1; i < 100; ++i) {
      const double u = i / 100.0;
      if (std::abs(cdf(Alpha(a), quantile(Alpha(a), u)) - u) > 1e-10) {
        c.expect(false, "round trip failure at alpha " + std::to_string(a));
        break;
      }
    }
  }
  // closed forms against quadrature
  const auto integ = [](const Alpha& al, const std::function<double(double)>& g) {
    const double s = al.sq();
    return quad_oracle::integrate(
        [&](double v) {
          const double y = std::pow(v, s);
          if (y < 1e-290 || y > 1.0 - 1e-15) return 0.0;
          return g(y) * pdf(al, y) * s * std::pow(v, s - 1.0);
        },
        0.0, 1.0);
  };
  for (double a : {0.5, 1.0, 2.0}) {
    Alpha al(a);
    for (int r = 1; r <= 4; ++r) {
      c.near(raw_moment(al, r), integ(al, [r](double y) { return std::pow(y, r); }), 1e-9,
             "raw moment");
    }
    c.near(pwm(al, 1, 1),
           integ(al, [&](double y) { return y * cdf(al, y); }), 1e-9, "pwm");
  }
  c.near(gini(Alpha(1)), 0.2, 1e-12, "gini at alpha 1");
  c.near(stress_strength(Alpha(1), Alpha(std::sqrt(2.0))), 31.0 / 42.0, 1e-10,
         "stress-strength");
  c.near(renyi_entropy(Alpha(1), 2), -std::log(1.2), 1e-9, "renyi order 2");

  // analytic derivatives against central differences
  Rng rng(2024);
  const Sample s(sample(Alpha(1.2), 40, rng));
  const auto fd = [](const std::function<double(double)>& f, double x) {
    const double h = 1e-6;
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  for (double a : {0.8, 1.2, 1.9}) {
    const auto check = [&](const std::function<ObjectiveEval(double)>& obj,
                           const std::string& name) {
      const double d1 = obj(a).d1;
      const double ref = fd([&](double x) { return obj(x).value; }, a);
      c.expect(std::abs(d1 - ref) <= 1e-6 * std::max(1.0, std::abs(ref)),
               name + " derivative mismatch at alpha " + std::to_string(a));
    };
    check([&](double x) { return mps_objective(Alpha(x), s); }, "mps");
    check([&](double x) { return ad_objective(Alpha(x), s); }, "ad");
    check([&](double x) { return percentile_objective(Alpha(x), s); }, "percentile");
    check([&](double x) { return cvm_objective(Alpha(x), s); }, "cvm");
    check([&](double x) { return ls_objective(Alpha(x), s); }, "ls");
    check([&](double x) { return wls_objective(Alpha(x), s); }, "wls");
    const double dl = loglik_bundle(Alpha(a), s).dl_dalpha;
    const double dl_ref = fd([&](double x) { return loglik_bundle(Alpha(x), s).loglik; }, a);
    c.expect(std::abs(dl - dl_ref) <= 1e-6 * std::max(1.0, std::abs(dl_ref)),
             "loglik derivative mismatch");
    const double dF = cdf_sensitivities(Alpha(a), 0.4).dF_dalpha;
    const double dF_ref = fd([&](double x) { return cdf(Alpha(x), 0.4); }, a);
    c.expect(std::abs(dF - dF_ref) <= 1e-6, "cdf sensitivity mismatch");
  }

  // construction: distance between samples and the analytic cdf
  for (double a : {0.5, 1.0, 2.5}) {
    Rng crng(static_cast<std::uint64_t>(4000 + 10 * a));
    c.expect(construction_check(Alpha(a), 100000, crng) < 0.01,
             "construction check at alpha " + std::to_string(a));
  }
  return c.ok;
}

bool criterion10(Checker& c) {
  const auto study_text = [&]() {
    SimStudyConfig cfg;
    cfg.alpha_true = 1.5;
    cfg.sample_sizes = {20, 50};
    cfg.replicates = 200;
    cfg.methods = {Method::Mle, Method::Ad, Method::Percentile};
    cfg.master_seed = 99;
    cfg.with_distribution_summary = false;
    const SimStudyTable t = run_study(cfg);
    std::ostringstream out;
    for (const SimCell& cc : t.cells) {
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    method_name(cc.method).c_str(), cc.n, cc.mean, cc.se, cc.aab, cc.mse,
                    cc.mre);
      out << buf;
    }
    return out.str();
  };
  setenv("UNITFIT_THREADS", "1", 1);
  const std::string one = study_text();
  setenv("UNITFIT_THREADS", "7", 1);
  const std::string seven = study_text();
  c.expect(one == seven, "simulation output differs across worker counts");

  const MburDist d(1.0);
  setenv("UNITFIT_THREADS", "1", 1);
  const McReference m1 = mc_reference_distribution(d, 15, GofStatistic::Ks, 2000,
                                                   McMode::Fixed, 5);
  setenv("UNITFIT_THREADS", "6", 1);
  const McReference m6 = mc_reference_distribution(d, 15, GofStatistic::Ks, 2000,
                                                   McMode::Fixed, 5);
  unsetenv("UNITFIT_THREADS");
  c.expect(m1.sorted_stats == m6.sorted_stats,
           "monte-carlo reference differs across worker counts");
  return c.ok;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    std::function<bool(Checker&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "descriptive statistics", criterion1},
      {2, "maximum likelihood fits", criterion2},
      {3, "information criteria", criterion3},
      {4, "goodness-of-fit statistics", criterion4},
      {5, "competitor fits", criterion5},
      {6, "ks p-values", criterion6},
      {7, "monte-carlo critical values", criterion7},
      {8, "simulation study", criterion8},
      {9, "property suites", criterion9},
      {10, "determinism across worker counts", criterion10},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Checker c;
    bool ok = false;
    try {
      ok = e.fn(c);
    } catch (const std::exception& ex) {
      c.notes.push_back(std::string("exception: ") + ex.what());
      ok = false;
    }
    std::printf("criterion %2d (%s): %s\n", e.id, e.label, ok ? "PASS" : "FAIL");
    for (const std::string& note : c.notes) std::printf("    %s\n", note.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
