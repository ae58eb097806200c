#include "mbur/competitors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mbur/core.hpp"
#include "mbur/optimize.hpp"
#include "mbur/special.hpp"

namespace mbur {
namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Mbur: return "mbur";
    case Family::Beta: return "beta";
    case Family::Kumaraswamy: return "kumaraswamy";
    case Family::ToppLeone: return "topp-leone";
    case Family::UnitLindley: return "unit-lindley";
  }
  throw std::logic_error("family_name: unreachable");
}

Family family_from_name(const std::string& name) {
  if (name == "mbur") return Family::Mbur;
  if (name == "beta") return Family::Beta;
  if (name == "kumaraswamy") return Family::Kumaraswamy;
  if (name == "topp-leone") return Family::ToppLeone;
  if (name == "unit-lindley") return Family::UnitLindley;
  throw std::invalid_argument("unknown distribution family: " + name);
}

double UnitDistribution::log_pdf(double y) const { return std::log(pdf(y)); }

double UnitDistribution::quantile(double u) const {
  Probability uv(u);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  double a = 0.0, b = 1.0;
  for (int i = 0; i < 200 && b - a > 1e-16; ++i) {
    const double mid = 0.5 * (a + b);
    if (cdf(mid) < u) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double UnitDistribution::loglik(const Sample& data) const {
  double s = 0.0;
  for (double y : data.values()) s += log_pdf(y);
  return s;
}

BetaDist::BetaDist(double a, double b) : a_(a), b_(b) {
  require_positive(a, "Beta a");
  require_positive(b, "Beta b");
  lnorm_ = log_gamma(a + b) - log_gamma(a) - log_gamma(b);
}
double BetaDist::log_pdf(double y) const {
  UnitValue yv(y);
  return lnorm_ + (a_ - 1.0) * std::log(y) + (b_ - 1.0) * std::log1p(-y);
}
double BetaDist::pdf(double y) const { return std::exp(log_pdf(y)); }
double BetaDist::cdf(double y) const {
  UnitValue yv(y);
  return regularized_incomplete_beta(a_, b_, y);
}

KumaraswamyDist::KumaraswamyDist(double a, double b) : a_(a), b_(b) {
  require_positive(a, "Kumaraswamy a");
  require_positive(b, "Kumaraswamy b");
}
double KumaraswamyDist::log_pdf(double y) const {
  UnitValue yv(y);
  const double ta = a_ * std::log(y);
  return std::log(a_) + std::log(b_) + (a_ - 1.0) * std::log(y) +
         (b_ - 1.0) * std::log(-std::expm1(ta));
}
double KumaraswamyDist::pdf(double y) const { return std::exp(log_pdf(y)); }
double KumaraswamyDist::cdf(double y) const {
  UnitValue yv(y);
  const double t = std::exp(a_ * std::log(y));
  return -std::expm1(b_ * std::log1p(-t));
}
double KumaraswamyDist::quantile(double u) const {
  Probability uv(u);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double inner = -std::expm1(std::log1p(-u) / b_);
  return std::exp(std::log(inner) / a_);
}

ToppLeoneDist::ToppLeoneDist(double theta) : theta_(theta) {
  require_positive(theta, "Topp-Leone theta");
}
double ToppLeoneDist::log_pdf(double y) const {
  UnitValue yv(y);
  const double g = y * (2.0 - y);
  return std::log(theta_) + std::log(2.0) + std::log1p(-y) + (theta_ - 1.0) * std::log(g);
}
double ToppLeoneDist::pdf(double y) const { return std::exp(log_pdf(y)); }
double ToppLeoneDist::cdf(double y) const {
  UnitValue yv(y);
  return std::exp(theta_ * std::log(y * (2.0 - y)));
}
double ToppLeoneDist::quantile(double u) const {
  Probability uv(u);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double g = std::exp(std::log(u) / theta_);
  return 1.0 - std::sqrt(1.0 - g);
}

UnitLindleyDist::UnitLindleyDist(double theta) : theta_(theta) {
  require_positive(theta, "Unit-Lindley theta");
}
double UnitLindleyDist::log_pdf(double y) const {
  UnitValue yv(y);
  const double t = y / (1.0 - y);
  return 2.0 * std::log(theta_) - std::log1p(theta_) - 3.0 * std::log1p(-y) - theta_ * t;
}
double UnitLindleyDist::pdf(double y) const { return std::exp(log_pdf(y)); }
double UnitLindleyDist::cdf(double y) const {
  UnitValue yv(y);
  const double t = y / (1.0 - y);
  return 1.0 - (1.0 + theta_ * t / (1.0 + theta_)) * std::exp(-theta_ * t);
}

MburDist::MburDist(double alpha) : alpha_(alpha) {}
std::vector<double> MburDist::params() const { return {alpha_.value()}; }
double MburDist::pdf(double y) const { return mbur::pdf(alpha_, y); }
double MburDist::cdf(double y) const { return mbur::cdf(alpha_, y); }
double MburDist::log_pdf(double y) const { return mbur::log_pdf(alpha_, y); }
double MburDist::quantile(double u) const { return mbur::quantile(alpha_, u); }

std::unique_ptr<UnitDistribution> make_distribution(Family family,
                                                    const std::vector<double>& params) {
  const auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw std::invalid_argument(family_name(family) + " takes " + std::to_string(k) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  switch (family) {
    case Family::Mbur:
      need(1);
      return std::make_unique<MburDist>(params[0]);
    case Family::Beta:
      need(2);
      return std::make_unique<BetaDist>(params[0], params[1]);
    case Family::Kumaraswamy:
      need(2);
      return std::make_unique<KumaraswamyDist>(params[0], params[1]);
    case Family::ToppLeone:
      need(1);
      return std::make_unique<ToppLeoneDist>(params[0]);
    case Family::UnitLindley:
      need(1);
      return std::make_unique<UnitLindleyDist>(params[0]);
  }
  throw std::logic_error("make_distribution: unreachable");
}

namespace {

// Finite-difference Hessian of the log-likelihood at the estimate, inverted
// to the estimator covariance diagonal (1 or 2 parameters).
void fill_se(CompetitorFit& fit, Family family, const Sample& data) {
  const std::vector<double>& est = fit.estimates;
  auto ll = [&](const std::vector<double>& p) {
    return make_distribution(family, p)->loglik(data);
  };
  const std::size_t k = est.size();
  std::vector<double> h(k);
  for (std::size_t i = 0; i < k; ++i) h[i] = 1e-4 * std::max(1.0, std::abs(est[i]));
  std::vector<std::vector<double>> H(k, std::vector<double>(k, 0.0));
  const double f0 = ll(est);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> p = est;
    p[i] = est[i] + h[i];
    const double fp = ll(p);
    p[i] = est[i] - h[i];
    const double fm = ll(p);
    H[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
  }
  if (k == 2) {
    std::vector<double> p = est;
    auto at = [&](double da, double db) {
      p[0] = est[0] + da;
      p[1] = est[1] + db;
      return ll(p);
    };
    H[0][1] = H[1][0] = (at(h[0], h[1]) - at(h[0], -h[1]) - at(-h[0], h[1]) + at(-h[0], -h[1])) /
                        (4.0 * h[0] * h[1]);
  }
  const double n = static_cast<double>(data.size());
  fit.se.assign(k, std::numeric_limits<double>::quiet_NaN());
  fit.paper_variance.assign(k, std::numeric_limits<double>::quiet_NaN());
  if (k == 1) {
    if (H[0][0] < 0.0) {
      const double v = -1.0 / H[0][0];
      fit.se[0] = std::sqrt(v);
      fit.paper_variance[0] = n * v;
    }
  } else {
    const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    if (det > 0.0 && H[0][0] < 0.0) {
      // inverse of -H
      const double v0 = -H[1][1] / det;
      const double v1 = -H[0][0] / det;
      if (v0 > 0.0 && v1 > 0.0) {
        fit.se = {std::sqrt(v0), std::sqrt(v1)};
        fit.paper_variance = {n * v0, n * v1};
      }
    }
  }
}

}  // namespace

CompetitorFit fit_mle_competitor(Family family, const Sample& data) {
  if (data.size() < 3) throw std::invalid_argument("fit_mle_competitor: need n >= 3");
  const double n = static_cast<double>(data.size());
  CompetitorFit fit;
  fit.family = family;

  switch (family) {
    case Family::Mbur:
      throw std::invalid_argument("fit_mle_competitor: use the estimation module for MBUR");
    case Family::ToppLeone: {
      double s = 0.0;
      for (double y : data.values()) s += std::log(y * (2.0 - y));
      const double theta = -n / s;
      fit.estimates = {theta};
      fit.converged = true;
      fit.iterations = 0;
      break;
    }
    case Family::UnitLindley: {
      double t_sum = 0.0;
      for (double y : data.values()) t_sum += y / (1.0 - y);
      const double start = n / t_sum;
      ScalarObjective obj;
      obj.maximize = true;
      obj.value = [&](double th) { return UnitLindleyDist(th).loglik(data); };
      obj.grad = [&, t_sum](double th) {
        return n * (2.0 / th - 1.0 / (1.0 + th)) - t_sum;
      };
      obj.hess = [&](double th) {
        return n * (-2.0 / (th * th) + 1.0 / ((1.0 + th) * (1.0 + th)));
      };
      OptimizerConfig cfg;
      cfg.bracket_low = 1e-8;
      cfg.bracket_high = 1e8;
      ScalarResult r = solve_scalar(obj, cfg, start);
      fit.estimates = {r.x};
      fit.converged = r.converged;
      fit.iterations = r.iterations;
      fit.message = r.message;
      break;
    }
    case Family::Beta:
    case Family::Kumaraswamy: {
      // moment-matched Beta start (also seeds Kumaraswamy)
      const double m = data.mean();
      double var = 0.0;
      for (double y : data.values()) var += (y - m) * (y - m);
      var /= (n - 1.0);
      double a0 = 1.0, b0 = 1.0;
      const double common = m * (1.0 - m) / var - 1.0;
      if (common > 0.0) {
        a0 = m * common;
        b0 = (1.0 - m) * common;
      }
      auto neg_ll = [&](const std::vector<double>& logp) {
        const double pa = std::exp(logp[0]);
        const double pb = std::exp(logp[1]);
        if (!std::isfinite(pa) || !std::isfinite(pb) || pa <= 0.0 || pb <= 0.0) {
          return 1e300;
        }
        try {
          if (family == Family::Beta) return -BetaDist(pa, pb).loglik(data);
          return -KumaraswamyDist(pa, pb).loglik(data);
        } catch (const std::exception&) {
          return 1e300;
        }
      };
      NelderMeadResult r = nelder_mead(neg_ll, {std::log(a0), std::log(b0)});
      fit.estimates = {std::exp(r.x[0]), std::exp(r.x[1])};
      fit.converged = r.converged;
      fit.iterations = r.iterations;
      if (!r.converged) fit.message = "Nelder-Mead iteration budget exhausted";
      break;
    }
  }

  fit.loglik = make_distribution(family, fit.estimates)->loglik(data);
  fill_se(fit, family, data);
  return fit;
}

}  // namespace mbur
