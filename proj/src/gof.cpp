#include "mbur/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "mbur/core.hpp"
#include "mbur/estimation.hpp"
#include "mbur/quadrature.hpp"
#include "mbur/rng.hpp"
#include "mbur/special.hpp"

namespace mbur {
namespace {

constexpr double kClipLow = 1e-15;
constexpr double kClipHigh = 1.0 - 1e-15;

double clip(double F, int* warnings) {
  if (F < kClipLow || F > kClipHigh) {
    if (warnings) ++*warnings;
    return std::clamp(F, kClipLow, kClipHigh);
  }
  return F;
}

double ks_from_sorted(const std::vector<double>& F_sorted) {
  const double n = static_cast<double>(F_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < F_sorted.size(); ++i) {
    const double F = F_sorted[i];
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

double lilliefors_stat(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
  if (sd == 0.0) throw std::runtime_error("lilliefors_test: degenerate (constant) input");
  std::vector<double> F(n);
  for (std::size_t i = 0; i < n; ++i) F[i] = norm_cdf((values[i] - mean) / sd);
  return ks_from_sorted(F);
}

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

}  // namespace

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UNITFIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double ks_statistic(const Sample& data, const CdfFn& cdf) {
  std::vector<double> F;
  F.reserve(data.size());
  for (double y : data.values()) F.push_back(cdf(y));
  return ks_from_sorted(F);
}

double ks_pvalue(double d, std::size_t n) {
  if (d < 0.0 || d > 1.0) throw std::invalid_argument("ks_pvalue: statistic outside [0,1]");
  if (d == 0.0) return 1.0;
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = d * (sn + 0.12 + 0.11 / sn);
  double p;
  if (lambda < 1.18) {
    // the alternating series degenerates for small lambda; use the dual form
    double cdf_k = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const double m = 2.0 * k - 1.0;
      cdf_k += std::exp(-m * m * M_PI * M_PI / (8.0 * lambda * lambda));
    }
    p = 1.0 - std::sqrt(2.0 * M_PI) / lambda * cdf_k;
  } else {
    p = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
      p += (k % 2 == 1) ? term : -term;
      if (term < 1e-12) break;
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

double ad_statistic(const Sample& data, const CdfFn& cdf, int* clip_warnings) {
  const std::size_t n = data.size();
  const std::vector<double>& y = data.values();
  std::vector<double> F(n);
  for (std::size_t i = 0; i < n; ++i) F[i] = clip(cdf(y[i]), clip_warnings);
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double w = (2.0 * static_cast<double>(i) - 1.0) / dn;
    sum += w * (std::log(F[i - 1]) + std::log(1.0 - F[n - i]));
  }
  return -dn - sum;
}

double cvm_statistic(const Sample& data, const CdfFn& cdf, int* clip_warnings) {
  const std::size_t n = data.size();
  const std::vector<double>& y = data.values();
  const double dn = static_cast<double>(n);
  double sum = 1.0 / (12.0 * dn);
  for (std::size_t i = 1; i <= n; ++i) {
    const double F = clip(cdf(y[i - 1]), clip_warnings);
    const double e = (2.0 * static_cast<double>(i) - 1.0) / (2.0 * dn);
    sum += (F - e) * (F - e);
  }
  return sum;
}

GofStatistic gof_statistic_from_name(const std::string& name) {
  if (name == "ks") return GofStatistic::Ks;
  if (name == "ad") return GofStatistic::Ad;
  if (name == "cvm") return GofStatistic::Cvm;
  throw std::invalid_argument("unknown GoF statistic: " + name);
}

std::string gof_statistic_name(GofStatistic s) {
  switch (s) {
    case GofStatistic::Ks: return "ks";
    case GofStatistic::Ad: return "ad";
    case GofStatistic::Cvm: return "cvm";
  }
  throw std::logic_error("gof_statistic_name: unreachable");
}

double McReference::quantile(double level) const {
  if (sorted_stats.empty()) throw std::runtime_error("McReference: no usable replicates");
  return midpoint_quantile(sorted_stats, level);
}

double McReference::pvalue(double observed) const {
  if (sorted_stats.empty()) throw std::runtime_error("McReference: no usable replicates");
  const auto it = std::lower_bound(sorted_stats.begin(), sorted_stats.end(), observed);
  const std::size_t ge = sorted_stats.end() - it;
  return static_cast<double>(ge) / static_cast<double>(sorted_stats.size());
}

McReference mc_reference_distribution(const UnitDistribution& dist, std::size_t n,
                                      GofStatistic statistic, std::size_t replicates,
                                      McMode mode, std::uint64_t seed, int threads) {
  if (replicates < 1000) {
    throw std::invalid_argument("mc_reference_distribution: need at least 1000 replicates");
  }
  McReference ref;
  ref.statistic = statistic;
  ref.mode = mode;
  ref.replicates_requested = replicates;

  const std::uint64_t stat_tag = static_cast<std::uint64_t>(statistic);
  const std::uint64_t mode_tag = static_cast<std::uint64_t>(mode);
  std::vector<double> stats(replicates, std::numeric_limits<double>::quiet_NaN());

  auto replicate = [&](std::size_t rep) {
    Rng rng(derive_substream_seed(seed, {stat_tag, mode_tag, n, rep}));
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) {
      draws[i] = std::clamp(dist.quantile(rng.uniform01()), kUnitLow, kUnitHigh);
    }
    Sample s(std::move(draws));
    const UnitDistribution* target = &dist;
    std::unique_ptr<UnitDistribution> refitted;
    if (mode == McMode::Refit) {
      try {
        if (dist.family() == Family::Mbur) {
          const FitResult fr = fit_mle(s);
          if (!fr.converged) return;
          refitted = std::make_unique<MburDist>(fr.estimate);
        } else {
          const CompetitorFit cf = fit_mle_competitor(dist.family(), s);
          if (!cf.converged) return;
          refitted = make_distribution(dist.family(), cf.estimates);
        }
      } catch (const std::exception&) {
        return;  // failed replicate, dropped and counted
      }
      target = refitted.get();
    }
    const CdfFn F = [target](double y) { return target->cdf(y); };
    switch (statistic) {
      case GofStatistic::Ks: stats[rep] = ks_statistic(s, F); break;
      case GofStatistic::Ad: stats[rep] = ad_statistic(s, F); break;
      case GofStatistic::Cvm: stats[rep] = cvm_statistic(s, F); break;
    }
  };

  run_chunked(replicates, effective_threads(threads), replicate);

  for (double v : stats) {
    if (std::isnan(v)) {
      ++ref.failed_replicates;
    } else {
      ref.sorted_stats.push_back(v);
    }
  }
  ref.replicates_used = ref.sorted_stats.size();
  std::sort(ref.sorted_stats.begin(), ref.sorted_stats.end());
  return ref;
}

InfoCriteria info_criteria(double loglik, int k, std::size_t n) {
  if (k < 0) throw std::invalid_argument("info_criteria: negative parameter count");
  if (k > 0 && n <= static_cast<std::size_t>(k) + 1) {
    throw std::domain_error("info_criteria: CAIC requires n > k + 1");
  }
  InfoCriteria ic;
  const double m2ll = -2.0 * loglik;
  const double dk = static_cast<double>(k);
  const double dn = static_cast<double>(n);
  ic.aic = m2ll + 2.0 * dk;
  ic.caic = m2ll + (k > 0 ? 2.0 * dk * dn / (dn - dk - 1.0) : 0.0);
  ic.bic = m2ll + (k > 0 ? dk * std::log(dn) : 0.0);
  ic.hqic = m2ll + (k > 0 ? 2.0 * dk * std::log(std::log(dn)) : 0.0);
  return ic;
}

std::vector<std::pair<double, double>> ttt_empirical(const Sample& data) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("ttt_empirical: need n >= 2");
  const std::vector<double>& x = data.values();
  const double dn = static_cast<double>(n);
  std::vector<double> ttt(n);
  double acc = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += (dn - static_cast<double>(i)) * (x[i] - prev);
    ttt[i] = acc;
    prev = x[i];
  }
  std::vector<std::pair<double, double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {(static_cast<double>(i) + 1.0) / dn, ttt[i] / ttt[n - 1]};
  }
  return out;
}

std::vector<std::pair<double, double>> ttt_theoretical(const UnitDistribution& dist,
                                                       const std::vector<double>& u_grid) {
  auto survival = [&dist](double x) {
    return 1.0 - dist.cdf(std::clamp(x, kUnitLow, kUnitHigh));
  };
  const double upper = dist.quantile(1.0 - 1e-12);
  const double denom = integrate(survival, 0.0, upper, 1e-10);
  std::vector<std::pair<double, double>> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("ttt_theoretical: grid outside [0,1]");
    const double q = std::min(dist.quantile(std::min(u, 1.0 - 1e-12)), upper);
    const double num = (q <= 0.0) ? 0.0 : integrate(survival, 0.0, q, 1e-10);
    out.emplace_back(u, num / denom);
  }
  return out;
}

double midpoint_quantile(const std::vector<double>& sorted_values, double p) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw std::invalid_argument("midpoint_quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("midpoint_quantile: p outside [0,1]");
  const double dn = static_cast<double>(n);
  if (p <= 0.5 / dn) return sorted_values.front();
  if (p >= (dn - 0.5) / dn) return sorted_values.back();
  const double pos = p * dn + 0.5;  // 1-based fractional order statistic index
  const std::size_t k = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(k);
  return sorted_values[k - 1] + frac * (sorted_values[k] - sorted_values[k - 1]);
}

DescriptiveStats descriptive_stats(const std::vector<double>& raw) {
  const std::size_t n = raw.size();
  if (n < 2) throw std::invalid_argument("descriptive_stats: need n >= 2");
  std::vector<double> x(raw);
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) {
    throw std::runtime_error("descriptive_stats: degenerate (constant) input");
  }
  const double dn = static_cast<double>(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= dn;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0, ss = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
    ss += d * d;
  }
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  DescriptiveStats s;
  s.min = x.front();
  s.max = x.back();
  s.mean = mean;
  s.std = std::sqrt(ss / (dn - 1.0));
  // bias-adjusted (Fisher) shape coefficients, kurtosis not excess; this is
  // the convention that reproduces the reference tables digit for digit
  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2);
  s.skewness = g1 * std::sqrt(dn * (dn - 1.0)) / (dn - 2.0);
  s.kurtosis = ((dn + 1.0) * g2 - 3.0 * (dn - 1.0)) * (dn - 1.0) /
                   ((dn - 2.0) * (dn - 3.0)) +
               3.0;
  s.p25 = midpoint_quantile(x, 0.25);
  s.p50 = midpoint_quantile(x, 0.50);
  s.p75 = midpoint_quantile(x, 0.75);
  return s;
}

LillieforsResult lilliefors_test(const std::vector<double>& values, double level,
                                 std::size_t mc_replicates, std::uint64_t seed) {
  const std::size_t n = values.size();
  if (n < 4) throw std::invalid_argument("lilliefors_test: need n >= 4");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("lilliefors_test: level must be in (0,1)");
  }
  if (mc_replicates < 100) {
    throw std::invalid_argument("lilliefors_test: need at least 100 MC replicates");
  }
  LillieforsResult res;
  res.stat = lilliefors_stat(values);

  std::vector<double> null_stats(mc_replicates);
  auto replicate = [&](std::size_t rep) {
    Rng rng(derive_substream_seed(seed, {0x11e7ULL, n, rep}));
    std::vector<double> z(n);
    for (double& v : z) v = norm_quantile(rng.uniform01());
    null_stats[rep] = lilliefors_stat(std::move(z));
  };
  run_chunked(mc_replicates, effective_threads(0), replicate);

  std::sort(null_stats.begin(), null_stats.end());
  res.critical = midpoint_quantile(null_stats, 1.0 - level);
  const auto it = std::lower_bound(null_stats.begin(), null_stats.end(), res.stat);
  const double p = static_cast<double>(null_stats.end() - it) /
                   static_cast<double>(null_stats.size());
  res.pvalue = std::clamp(p, 0.001, 0.5);
  res.reject = res.stat > res.critical;
  return res;
}

}  // namespace mbur
