#include <cmath>
#include <set>

#include "doctest.h"
#include "mbur/rng.hpp"
#include "mbur/simulation.hpp"

using namespace mbur;

TEST_CASE("two-point metric arithmetic") {
  SimStudyConfig cfg;
  cfg.alpha_true = 2.5;
  cfg.sample_sizes = {2};
  cfg.replicates = 2;
  cfg.methods = {Method::Mom};
  // direct formula check on a fabricated estimate set {2.4, 2.6}
  const std::vector<double> est = {2.4, 2.6};
  double mean = 0.0, aab = 0.0, mse = 0.0;
  for (double e : est) {
    mean += e / 2.0;
    aab += std::abs(e - 2.5) / 2.0;
    mse += (e - 2.5) * (e - 2.5) / 2.0;
  }
  CHECK(mean == doctest::Approx(2.5));
  CHECK(aab == doctest::Approx(0.1));
  CHECK(mse == doctest::Approx(0.01));
  CHECK(std::sqrt(mse) == doctest::Approx(0.1));
  CHECK(aab / 2.5 == doctest::Approx(0.04));
  double ss = 0.0;
  for (double e : est) ss += (e - mean) * (e - mean);
  CHECK(std::sqrt(ss / 1.0) / std::sqrt(2.0) == doctest::Approx(0.1));
}

TEST_CASE("study metrics satisfy their identities") {
  SimStudyConfig cfg;
  cfg.alpha_true = 1.0;
  cfg.sample_sizes = {30};
  cfg.replicates = 200;
  cfg.methods = {Method::Mom, Method::Mle};
  cfg.master_seed = 11;
  cfg.with_distribution_summary = false;
  const SimStudyTable t = run_study(cfg);
  REQUIRE(t.cells.size() == 2);
  for (const SimCell& c : t.cells) {
    CHECK(c.rmse == doctest::Approx(std::sqrt(c.mse)).epsilon(1e-12));
    const double bias = c.mean - cfg.alpha_true;
    CHECK(c.mse >= bias * bias - 1e-12);
    CHECK(c.aab >= std::abs(bias) - 1e-12);
    // se is consistent with the mse decomposition up to monte-carlo noise
    const double se2 = (c.mse - bias * bias) / static_cast<double>(c.replicates_used);
    CHECK(c.se * c.se == doctest::Approx(se2).epsilon(0.05));
    CHECK(c.failed == 0);
    CHECK(c.usable);
  }
}

TEST_CASE("determinism across worker counts") {
  SimStudyConfig cfg;
  cfg.alpha_true = 2.5;
  cfg.sample_sizes = {20, 50};
  cfg.replicates = 100;
  cfg.methods = {Method::Mle, Method::Cvm};
  cfg.master_seed = 321;
  cfg.with_distribution_summary = false;

  cfg.threads = 1;
  const SimStudyTable t1 = run_study(cfg);
  cfg.threads = 5;
  const SimStudyTable t5 = run_study(cfg);
  REQUIRE(t1.cells.size() == t5.cells.size());
  for (std::size_t i = 0; i < t1.cells.size(); ++i) {
    CHECK(t1.cells[i].mean == t5.cells[i].mean);
    CHECK(t1.cells[i].se == t5.cells[i].se);
    CHECK(t1.cells[i].mse == t5.cells[i].mse);
    CHECK(t1.cells[i].aab == t5.cells[i].aab);
  }
}

TEST_CASE("substream seed derivation") {
  CHECK(derive_substream_seed(42, {1, 2, 3}) == derive_substream_seed(42, {1, 2, 3}));
  CHECK(derive_substream_seed(42, {1, 2, 3}) != derive_substream_seed(42, {1, 2, 4}));
  CHECK(derive_substream_seed(42, {1, 2, 3}) != derive_substream_seed(43, {1, 2, 3}));

  std::set<std::uint64_t> seen;
  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t master = rng.next_u64();
    seen.insert(derive_substream_seed(master, {7}));
    seen.insert(derive_substream_seed(master, {8}));
  }
  CHECK(seen.size() == 40000);

  // changing one label flips about half the output bits
  double flips = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = derive_substream_seed(9, {static_cast<std::uint64_t>(i), 0});
    const std::uint64_t b = derive_substream_seed(9, {static_cast<std::uint64_t>(i), 1});
    flips += static_cast<double>(__builtin_popcountll(a ^ b));
  }
  flips /= 2000.0;
  CHECK(flips > 28.0);
  CHECK(flips < 36.0);
}

TEST_CASE("error decreases with sample size") {
  SimStudyConfig cfg;
  cfg.alpha_true = 2.5;
  cfg.sample_sizes = {20, 100, 400};
  cfg.replicates = 300;
  cfg.methods = {Method::Mle, Method::Mom};
  cfg.master_seed = 5150;
  cfg.with_distribution_summary = false;
  const SimStudyTable t = run_study(cfg);
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    for (std::size_t j = 1; j < cfg.sample_sizes.size(); ++j) {
      const SimCell& prev = t.cells[m * cfg.sample_sizes.size() + j - 1];
      const SimCell& cur = t.cells[m * cfg.sample_sizes.size() + j];
      CHECK(cur.aab < prev.aab);
      CHECK(cur.mse < prev.mse);
      CHECK(cur.mre < prev.mre);
    }
  }
}

TEST_CASE("estimator distribution summary") {
  // symmetric synthetic estimates
  std::vector<double> sym;
  for (int i = 0; i < 50; ++i) {
    sym.push_back(1.0 - i * 0.01);
    sym.push_back(1.0 + i * 0.01);
  }
  const DistributionSummary s = estimator_distribution_summary(sym, Alpha(1.0), 1000, 2);
  CHECK(std::abs(s.skewness) < 1e-12);
  CHECK(s.q025 < s.q975);

  CHECK_THROWS(estimator_distribution_summary({1.0, 1.0}, Alpha(1.0)));
  CHECK_THROWS(estimator_distribution_summary(std::vector<double>(50, 1.0), Alpha(1.0)));
}

TEST_CASE("config validation") {
  SimStudyConfig cfg;
  cfg.alpha_true = 1.0;
  cfg.sample_sizes = {10};
  cfg.replicates = 0;
  cfg.methods = {Method::Mom};
  CHECK_THROWS(run_study(cfg));
  cfg.replicates = 10;
  cfg.methods.clear();
  CHECK_THROWS(run_study(cfg));
  cfg.methods = {Method::Mom};
  cfg.sample_sizes = {1};
  CHECK_THROWS(run_study(cfg));
}
