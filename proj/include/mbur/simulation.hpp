#pragma once

#include <cstdint>
#include <vector>

#include "mbur/estimation.hpp"
#include "mbur/types.hpp"

namespace mbur {

struct SimStudyConfig {
  double alpha_true = 1.0;
  std::vector<std::size_t> sample_sizes;
  std::size_t replicates = 1000;
  std::vector<Method> methods;
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 -> UNITFIT_THREADS / hardware
  bool with_distribution_summary = true;
};

struct DistributionSummary {
  double q025 = 0.0;
  double q975 = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  bool lilliefors_reject_5pct = false;
  bool lilliefors_reject_1pct = false;
};

struct SimCell {
  Method method = Method::Mle;
  std::size_t n = 0;
  double mean = 0.0;
  double se = 0.0;    // std of estimates (n-1 denominator) / sqrt(N)
  double aab = 0.0;   // average absolute bias
  double mse = 0.0;
  double rmse = 0.0;
  double mre = 0.0;   // aab / alpha_true
  std::size_t replicates_used = 0;
  std::size_t failed = 0;
  bool usable = true;  // false when > 5% of replicates failed
  DistributionSummary summary;
};

struct SimStudyTable {
  double alpha_true = 0.0;
  std::size_t replicates = 0;
  std::uint64_t master_seed = 0;
  std::vector<SimCell> cells;  // method-major, then sample size
};

/// Replicated simulation study. Per-replicate seeds derive deterministically
/// from (master_seed, method, n, replicate index), and cells aggregate by
/// replicate index, so the table is identical for any worker count.
SimStudyTable run_study(const SimStudyConfig& config);

/// Quantiles (midpoint convention), shape, and Lilliefors normality decisions
/// for a vector of replicated estimates.
DistributionSummary estimator_distribution_summary(const std::vector<double>& estimates,
                                                   const Alpha& alpha_true,
                                                   std::size_t lilliefors_replicates = 2000,
                                                   std::uint64_t seed = 0x51D5u);

}  // namespace mbur
