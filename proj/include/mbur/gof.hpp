#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "mbur/competitors.hpp"
#include "mbur/types.hpp"

namespace mbur {

using CdfFn = std::function<double(double)>;

struct InfoCriteria {
  double aic = 0.0;
  double caic = 0.0;
  double bic = 0.0;
  double hqic = 0.0;
};

struct DescriptiveStats {
  double min = 0.0, mean = 0.0, std = 0.0, skewness = 0.0, kurtosis = 0.0;
  double p25 = 0.0, p50 = 0.0, p75 = 0.0, max = 0.0;
};

double ks_statistic(const Sample& data, const CdfFn& cdf);

/// Stephens-adjusted asymptotic Kolmogorov p-value.
double ks_pvalue(double d, std::size_t n);

/// AD and CVM against a fully specified CDF. F values outside
/// (1e-15, 1-1e-15) are clipped into range; each clip bumps *clip_warnings
/// when the pointer is given.
double ad_statistic(const Sample& data, const CdfFn& cdf, int* clip_warnings = nullptr);
double cvm_statistic(const Sample& data, const CdfFn& cdf, int* clip_warnings = nullptr);

enum class GofStatistic { Ks, Ad, Cvm };
enum class McMode { Fixed, Refit };

GofStatistic gof_statistic_from_name(const std::string& name);
std::string gof_statistic_name(GofStatistic s);

struct McReference {
  GofStatistic statistic = GofStatistic::Ad;
  McMode mode = McMode::Fixed;
  std::size_t replicates_requested = 0;
  std::size_t replicates_used = 0;
  std::size_t failed_replicates = 0;
  std::vector<double> sorted_stats;

  /// Empirical quantile of the replicate statistics (midpoint convention).
  double quantile(double level) const;
  /// Proportion of replicate statistics >= observed.
  double pvalue(double observed) const;
};

/// Simulates the null distribution of a GoF statistic under the given
/// distribution. In fixed mode the statistic is evaluated against the given
/// parameters; in refit mode each replicate is refitted first (parametric
/// bootstrap). Deterministic for a fixed seed regardless of thread count.
McReference mc_reference_distribution(const UnitDistribution& dist, std::size_t n,
                                      GofStatistic statistic, std::size_t replicates,
                                      McMode mode, std::uint64_t seed, int threads = 0);

InfoCriteria info_criteria(double loglik, int k, std::size_t n);

std::vector<std::pair<double, double>> ttt_empirical(const Sample& data);
std::vector<std::pair<double, double>> ttt_theoretical(const UnitDistribution& dist,
                                                       const std::vector<double>& u_grid);

DescriptiveStats descriptive_stats(const std::vector<double>& raw);

/// p-th quantile (p in [0,1]) of a sorted vector with order statistics at
/// midpoint plotting positions (k-0.5)/n, linear interpolation, clamped ends.
double midpoint_quantile(const std::vector<double>& sorted_values, double p);

struct LillieforsResult {
  double stat = 0.0;
  double critical = 0.0;
  double pvalue = 0.0;  // clamped to [0.001, 0.5]
  bool reject = false;
};

LillieforsResult lilliefors_test(const std::vector<double>& values, double level,
                                 std::size_t mc_replicates, std::uint64_t seed);

/// Worker count used by parallel sections: requested if > 0, else the
/// UNITFIT_THREADS environment variable, else the hardware concurrency.
int effective_threads(int requested);

}  // namespace mbur
