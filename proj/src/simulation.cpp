#include "mbur/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mbur/core.hpp"
#include "mbur/gof.hpp"
#include "mbur/rng.hpp"
#include "mbur/special.hpp"

namespace mbur {
namespace {

void run_chunked(std::size_t total, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || total < 2) {
    for (std::size_t i = 0; i < total; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Null distribution of the Lilliefors statistic depends only on the sample
// size, so it is simulated once per size and cached.
const std::vector<double>& lilliefors_null(std::size_t n, std::size_t replicates,
                                           std::uint64_t seed) {
  static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::vector<double>>
      cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, replicates, seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<double> stats(replicates);
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng(derive_substream_seed(seed, {0x11e7ULL, n, rep}));
    std::vector<double> z(n);
    for (double& v : z) v = norm_quantile(rng.uniform01());
    std::sort(z.begin(), z.end());
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double F = norm_cdf((z[i] - mean) / sd);
      d = std::max({d, (static_cast<double>(i) + 1.0) / static_cast<double>(n) - F,
                    F - static_cast<double>(i) / static_cast<double>(n)});
    }
    stats[rep] = d;
  }
  std::sort(stats.begin(), stats.end());
  return cache.emplace(key, std::move(stats)).first->second;
}

}  // namespace

DistributionSummary estimator_distribution_summary(const std::vector<double>& estimates,
                                                   const Alpha& alpha_true,
                                                   std::size_t lilliefors_replicates,
                                                   std::uint64_t seed) {
  (void)alpha_true;
  const std::size_t n = estimates.size();
  if (n < 10) {
    throw std::invalid_argument("estimator_distribution_summary: need at least 10 estimates");
  }
  std::vector<double> x(estimates);
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) {
    throw std::runtime_error("estimator_distribution_summary: degenerate estimates");
  }
  DistributionSummary s;
  s.q025 = midpoint_quantile(x, 0.025);
  s.q975 = midpoint_quantile(x, 0.975);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  s.skewness = m3 / std::pow(m2, 1.5);
  s.kurtosis = m4 / (m2 * m2);

  // Lilliefors statistic of the estimates against fitted normality
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = norm_cdf((x[i] - mean) / sd);
    d = std::max({d, (static_cast<double>(i) + 1.0) / static_cast<double>(n) - F,
                  F - static_cast<double>(i) / static_cast<double>(n)});
  }
  const std::vector<double>& null_stats = lilliefors_null(n, lilliefors_replicates, seed);
  s.lilliefors_reject_5pct = d > midpoint_quantile(null_stats, 0.95);
  s.lilliefors_reject_1pct = d > midpoint_quantile(null_stats, 0.99);
  return s;
}

SimStudyTable run_study(const SimStudyConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("run_study: need replicates >= 1");
  if (config.methods.empty()) throw std::invalid_argument("run_study: no methods selected");
  for (std::size_t n : config.sample_sizes) {
    if (n < 2) throw std::invalid_argument("run_study: sample sizes must be >= 2");
  }
  const Alpha alpha(config.alpha_true);
  const int threads = effective_threads(config.threads);

  SimStudyTable table;
  table.alpha_true = config.alpha_true;
  table.replicates = config.replicates;
  table.master_seed = config.master_seed;

  for (Method method : config.methods) {
    const std::uint64_t method_tag = static_cast<std::uint64_t>(method);
    for (std::size_t n : config.sample_sizes) {
      std::vector<double> estimates(config.replicates,
                                    std::numeric_limits<double>::quiet_NaN());
      auto replicate = [&](std::size_t rep) {
        Rng rng(derive_substream_seed(config.master_seed, {method_tag, n, rep}));
        std::vector<double> draws = sample(alpha, n, rng);
        for (double& v : draws) v = std::clamp(v, kUnitLow, kUnitHigh);
        try {
          const FitResult fr = fit(method, Sample(std::move(draws)));
          if (fr.converged) estimates[rep] = fr.estimate;
        } catch (const std::exception&) {
          // failed replicate, excluded and counted below
        }
      };
      run_chunked(config.replicates, threads, replicate);

      SimCell cell;
      cell.method = method;
      cell.n = n;
      std::vector<double> ok;
      ok.reserve(config.replicates);
      for (double e : estimates) {
        if (std::isnan(e)) {
          ++cell.failed;
        } else {
          ok.push_back(e);
        }
      }
      cell.replicates_used = ok.size();
      cell.usable = cell.failed * 20 <= config.replicates;  // > 5% failures -> unusable
      if (!ok.empty()) {
        const double m = static_cast<double>(ok.size());
        double mean = 0.0, aab = 0.0, mse = 0.0;
        for (double e : ok) {
          mean += e;
          aab += std::abs(e - config.alpha_true);
          mse += (e - config.alpha_true) * (e - config.alpha_true);
        }
        mean /= m;
        aab /= m;
        mse /= m;
        double ss = 0.0;
        for (double e : ok) ss += (e - mean) * (e - mean);
        cell.mean = mean;
        cell.aab = aab;
        cell.mse = mse;
        cell.rmse = std::sqrt(mse);
        cell.mre = aab / config.alpha_true;
        cell.se = (ok.size() > 1) ? std::sqrt(ss / (m - 1.0)) / std::sqrt(m) : 0.0;
        if (config.with_distribution_summary && ok.size() >= 10) {
          cell.summary = estimator_distribution_summary(ok, alpha);
        }
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace mbur
