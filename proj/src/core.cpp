#include "mbur/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mbur/quadrature.hpp"

namespace mbur {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double binom(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

// y^(k*b) as exp(k*b*ln y); 1 - y^b via expm1 to keep precision near y = 1.
struct Powers {
  double t;    // y^b
  double omt;  // 1 - y^b
  double ly;   // ln y
};

Powers powers(double b, double y) {
  const double ly = std::log(y);
  const double bl = b * ly;
  return {std::exp(bl), -std::expm1(bl), ly};
}

}  // namespace

double pdf(const Alpha& alpha, double y) {
  UnitValue yv(y);
  const double b = 1.0 / alpha.sq();
  const Powers p = powers(b, y);
  return 6.0 * b * p.omt * std::exp((2.0 * b - 1.0) * p.ly);
}

double log_pdf(const Alpha& alpha, double y) {
  UnitValue yv(y);
  const double b = 1.0 / alpha.sq();
  const Powers p = powers(b, y);
  return std::log(6.0 * b) + std::log(p.omt) + (2.0 * b - 1.0) * p.ly;
}

double cdf(const Alpha& alpha, double y) {
  UnitValue yv(y);
  const double b = 1.0 / alpha.sq();
  const double t = std::exp(b * std::log(y));
  return t * t * (3.0 - 2.0 * t);
}

ReliabilityFunctions reliability_functions(const Alpha& alpha, double y) {
  const double f = pdf(alpha, y);
  const double F = cdf(alpha, y);
  // survival written as (1-t)^2 (1+2t) to dodge cancellation near y = 1
  const double b = 1.0 / alpha.sq();
  const Powers p = powers(b, y);
  const double S = p.omt * p.omt * (1.0 + 2.0 * (1.0 - p.omt));
  if (S <= 0.0) throw std::domain_error("reliability_functions: survival underflowed to 0");
  if (F <= 0.0) throw std::domain_error("reliability_functions: cdf underflowed to 0");
  return {S, f / S, f / F};
}

double quantile(const Alpha& alpha, double u) {
  Probability uv(u);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double theta = std::acos(1.0 - 2.0 * u) / 3.0;
  double inner = 0.5 - std::cos(theta + kPi / 3.0);
  inner = std::clamp(inner, 0.0, 1.0);
  return std::pow(inner, alpha.sq());
}

std::vector<double> sample(const Alpha& alpha, std::size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample: need n >= 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(alpha, rng.uniform01()));
  return out;
}

double raw_moment(const Alpha& alpha, int r) {
  if (r < 0) throw std::invalid_argument("raw_moment: order must be >= 0");
  const double a2 = alpha.sq();
  const double ra2 = static_cast<double>(r) * a2;
  return 6.0 / ((2.0 + ra2) * (3.0 + ra2));
}

MomentSummary moment_summary(const Alpha& alpha) {
  const double m1 = raw_moment(alpha, 1);
  const double m2 = raw_moment(alpha, 2);
  const double m3 = raw_moment(alpha, 3);
  const double m4 = raw_moment(alpha, 4);
  const double var = m2 - m1 * m1;
  const double sd = std::sqrt(var);
  MomentSummary s;
  s.mean = m1;
  s.variance = var;
  s.skewness = (m3 - m1 * (3.0 * var + m1 * m1)) / (var * sd);
  s.kurtosis = (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * var + 3.0 * m1 * m1 * m1 * m1) / (var * var);
  s.cv = sd / m1;
  return s;
}

double incomplete_moment(const Alpha& alpha, int r, double t) {
  if (r < 0) throw std::invalid_argument("incomplete_moment: order must be >= 0");
  UnitValue tv(t);
  const double a2 = alpha.sq();
  const double b = 1.0 / a2;
  const double lt = std::log(t);
  const double ra2 = static_cast<double>(r) * a2;
  return 6.0 * std::exp((2.0 * b + r) * lt) / (2.0 + ra2) -
         6.0 * std::exp((3.0 * b + r) * lt) / (3.0 + ra2);
}

double stress_strength(const Alpha& alpha1, const Alpha& alpha2) {
  const double a = alpha1.sq();
  const double b = alpha2.sq();
  return b * (13.0 / (a + b) - 18.0 / (2.0 * a + 3.0 * b) - 12.0 / (3.0 * a + 2.0 * b));
}

InequalityCurves inequality_curves(const Alpha& alpha, double t) {
  UnitValue tv(t);
  const double a2 = alpha.sq();
  const double b = 1.0 / a2;
  const double lt = std::log(t);
  const double lorenz =
      std::exp((2.0 * b + 1.0) * lt) * ((3.0 + a2) - std::exp(b * lt) * (2.0 + a2));
  const double F = cdf(alpha, t);
  if (F <= 0.0) throw std::domain_error("inequality_curves: cdf underflowed to 0");
  return {lorenz, lorenz / F};
}

double gini(const Alpha& alpha) {
  const double a2 = alpha.sq();
  // Printed closed form, kept verbatim; goes negative for large alpha.
  return 1.0 - a2 * (5.0 + 3.0 * a2) / ((1.0 + a2) * (3.0 + 2.0 * a2));
}

double renyi_entropy(const Alpha& alpha, double gamma) {
  if (!(gamma > 0.0) || gamma == 1.0) {
    throw std::invalid_argument("renyi_entropy: order must be positive and != 1");
  }
  const double a2 = alpha.sq();
  // Integrability of f^gamma near 0 requires 2g - g*a2 + a2 > 0.
  if (2.0 * gamma - gamma * a2 + a2 <= 0.0) {
    throw std::domain_error("renyi_entropy: density power is not integrable for this order");
  }
  const double g = gamma;
  double integral;
  if (std::abs(g - std::round(g)) < 1e-12) {
    const int gi = static_cast<int>(std::lround(g));
    double sum = 0.0;
    for (int m = 0; m <= gi; ++m) {
      const double denom = static_cast<double>(m) + 2.0 * g - g * a2 + a2;
      sum += ((m % 2 == 0) ? 1.0 : -1.0) * binom(gi, m) / denom;
    }
    integral = std::pow(6.0, g) * std::pow(alpha.value(), -2.0 * (g - 1.0)) * sum;
  } else {
    const double lo = 1e-13;
    auto fg = [&](double y) { return std::exp(g * log_pdf(alpha, y)); };
    std::vector<double> splits = {1e-6, 1e-3, 0.1, 0.5, 0.9};
    if (auto m = mode(alpha)) splits.push_back(*m);
    integral = integrate_split(fg, lo, 1.0 - lo, splits, 1e-12);
    // analytic stub for the left tail where f ~ (6/a2) y^(2b-1)
    const double b = 1.0 / a2;
    const double e = g * (2.0 * b - 1.0);
    if (e > -1.0) {
      integral += std::pow(6.0 * b, g) * std::pow(lo, e + 1.0) / (e + 1.0);
    }
  }
  return std::log(integral) / (1.0 - g);
}

double survival_antiderivative(const Alpha& alpha, double y) {
  if (y == 0.0) return 0.0;
  const double b = 1.0 / alpha.sq();
  const double ly = std::log(y);
  return y - 3.0 * std::exp((2.0 * b + 1.0) * ly) / (2.0 * b + 1.0) +
         2.0 * std::exp((3.0 * b + 1.0) * ly) / (3.0 * b + 1.0);
}

double mean_residual_life(const Alpha& alpha, double y) {
  UnitValue yv(y);
  const double b = 1.0 / alpha.sq();
  const Powers p = powers(b, y);
  // survival written as (1-t)^2 (1+2t) to dodge cancellation near y = 1
  const double S = p.omt * p.omt * (1.0 + 2.0 * p.t);
  if (S <= 0.0) throw std::domain_error("mean_residual_life: survival underflowed to 0");
  const double tail = survival_antiderivative(alpha, 1.0) - survival_antiderivative(alpha, y);
  return std::max(0.0, tail) / S;
}

double lr_order_derivative(const Alpha& alpha1, const Alpha& alpha2, double y) {
  if (alpha1.value() == alpha2.value()) {
    throw std::invalid_argument("lr_order_derivative: need distinct shape parameters");
  }
  UnitValue yv(y);
  const double b1 = 1.0 / alpha1.sq();
  const double b2 = 1.0 / alpha2.sq();
  const Powers p1 = powers(b1, y);
  const Powers p2 = powers(b2, y);
  return (2.0 / y) * (b1 - b2) +
         (1.0 / y) * (-b1 * p1.t / p1.omt + b2 * p2.t / p2.omt);
}

double lr_order_limit_at_one(const Alpha& alpha1, const Alpha& alpha2) {
  return 3.0 * (1.0 / alpha1.sq() - 1.0 / alpha2.sq());
}

double pwm(const Alpha& alpha, int r, int s) {
  if (r < 0 || s < 0) throw std::invalid_argument("pwm: orders must be >= 0");
  const double ra2 = static_cast<double>(r) * alpha.sq();
  double sum = 0.0;
  for (int m = 0; m <= s; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double base = static_cast<double>(2 * s + m);
    sum += sign * binom(s, m) * std::pow(2.0 / 3.0, m) *
           (1.0 / (ra2 + base + 2.0) - 1.0 / (ra2 + base + 3.0));
  }
  return std::pow(3.0, s) * 6.0 * sum;
}

double order_statistic_pdf(const Alpha& alpha, const OrderStatSpec& spec, double y) {
  const double f = pdf(alpha, y);
  const double F = cdf(alpha, y);
  const double lc = std::lgamma(spec.n + 1.0) - std::lgamma(static_cast<double>(spec.j)) -
                    std::lgamma(spec.n - spec.j + 1.0);
  return std::exp(lc) * f * std::pow(F, spec.j - 1.0) *
         std::pow(1.0 - F, static_cast<double>(spec.n - spec.j));
}

double order_statistic_cdf(const Alpha& alpha, const OrderStatSpec& spec, double y) {
  const double F = cdf(alpha, y);
  double sum = 0.0;
  for (int k = spec.j; k <= spec.n; ++k) {
    sum += binom(spec.n, k) * std::pow(F, static_cast<double>(k)) *
           std::pow(1.0 - F, static_cast<double>(spec.n - k));
  }
  return std::clamp(sum, 0.0, 1.0);
}

std::optional<double> mode(const Alpha& alpha) {
  const double a2 = alpha.sq();
  if (a2 >= 2.0) return std::nullopt;
  return std::pow((2.0 - a2) / (3.0 - a2), a2);
}

CdfSensitivities cdf_sensitivities(const Alpha& alpha, double y) {
  UnitValue yv(y);
  const double a = alpha.value();
  const double b = 1.0 / alpha.sq();
  const double ly = std::log(y);
  const double t2 = std::exp(2.0 * b * ly);
  const double t3 = std::exp(3.0 * b * ly);
  CdfSensitivities s;
  s.dF_dalpha = (12.0 / (a * a * a)) * ly * (t3 - t2);
  s.d2F_dalpha2 = (36.0 / std::pow(a, 4)) * ly * (t2 - t3) +
                  (24.0 / std::pow(a, 6)) * ly * ly * (2.0 * t2 - 3.0 * t3);
  return s;
}

double dquantile_dalpha(const Alpha& alpha, double u) {
  Probability uv(u);
  if (u == 0.0 || u == 1.0) return 0.0;
  const double theta = std::acos(1.0 - 2.0 * u) / 3.0;
  const double inner = std::clamp(0.5 - std::cos(theta + kPi / 3.0), 0.0, 1.0);
  if (inner <= 0.0) return 0.0;
  const double q = std::pow(inner, alpha.sq());
  return q * 2.0 * alpha.value() * std::log(inner);
}

double d2quantile_dalpha2(const Alpha& alpha, double u) {
  Probability uv(u);
  if (u == 0.0 || u == 1.0) return 0.0;
  const double theta = std::acos(1.0 - 2.0 * u) / 3.0;
  const double inner = std::clamp(0.5 - std::cos(theta + kPi / 3.0), 0.0, 1.0);
  if (inner <= 0.0) return 0.0;
  const double lb = std::log(inner);
  const double q = std::pow(inner, alpha.sq());
  return q * 2.0 * lb * (1.0 + 2.0 * alpha.sq() * lb);
}

LoglikBundle loglik_bundle(const Alpha& alpha, const Sample& data) {
  const double a = alpha.value();
  const double b = 1.0 / alpha.sq();
  const double n = static_cast<double>(data.size());
  double sum_log_omt = 0.0, sum_ly = 0.0, sum_r1 = 0.0, sum_r2 = 0.0;
  for (double y : data.values()) {
    const Powers p = powers(b, y);
    sum_log_omt += std::log(p.omt);
    sum_ly += p.ly;
    const double ratio = p.t * p.ly / p.omt;
    sum_r1 += ratio;
    sum_r2 += p.t * p.ly * p.ly / (p.omt * p.omt);
  }
  LoglikBundle out;
  out.loglik = n * std::log(6.0) - 2.0 * n * std::log(a) + sum_log_omt + (2.0 * b - 1.0) * sum_ly;
  const double a3 = a * a * a;
  const double a4 = a3 * a;
  const double a6 = a4 * a * a;
  out.dl_dalpha = -2.0 * n / a + (2.0 / a3) * sum_r1 - (4.0 / a3) * sum_ly;
  out.d2l_dalpha2 =
      2.0 * n / (a * a) - (6.0 / a4) * sum_r1 + (12.0 / a4) * sum_ly - (4.0 / a6) * sum_r2;
  return out;
}

double mbr_pdf(const Alpha& alpha, double w) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw std::invalid_argument("mbr_pdf: parent variable must be positive and finite");
  }
  const double a2 = alpha.sq();
  const double e = std::exp(-w * w / a2);
  return (12.0 * w / a2) * (1.0 - e) * e * e;
}

double construction_check(const Alpha& alpha, std::size_t replicates, Rng& rng) {
  if (replicates < 10000) {
    throw std::invalid_argument("construction_check: need at least 10^4 replicates");
  }
  // change-of-variable identity, spot-checked before spending the MC budget
  for (double w : {0.3, 1.0, 2.0}) {
    const double y = std::exp(-w * w);
    const double lhs = mbr_pdf(alpha, w);
    const double rhs = pdf(alpha, y) * 2.0 * w * y;
    if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs))) {
      throw std::logic_error("construction_check: change-of-variable identity violated");
    }
  }
  const double a = alpha.value();
  std::vector<double> ys;
  ys.reserve(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    double w[3];
    for (double& wi : w) wi = a * std::sqrt(-std::log(1.0 - rng.uniform01()));
    const double med =
        std::max(std::min(w[0], w[1]), std::min(std::max(w[0], w[1]), w[2]));
    ys.push_back(std::exp(-med * med));
  }
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(replicates);
  double d = 0.0;
  for (std::size_t i = 0; i < replicates; ++i) {
    const double F = cdf(alpha, ys[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - F;
    const double lo = F - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

}  // namespace mbur
