#include "mbur/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mbur/core.hpp"
#include "mbur/special.hpp"

namespace mbur {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ObsDerivs {
  double F, Fp, Fpp;
};

std::vector<ObsDerivs> cdf_derivs(const Alpha& alpha, const Sample& data) {
  std::vector<ObsDerivs> out;
  out.reserve(data.size());
  for (double y : data.values()) {
    const CdfSensitivities s = cdf_sensitivities(alpha, y);
    out.push_back({cdf(alpha, y), s.dF_dalpha, s.d2F_dalpha2});
  }
  return out;
}

// per-observation log-density derivatives in alpha (single-term versions of
// the likelihood derivative sums)
void logf_derivs(const Alpha& alpha, double y, double* d1, double* d2) {
  const double a = alpha.value();
  const double b = 1.0 / alpha.sq();
  const double ly = std::log(y);
  const double t = std::exp(b * ly);
  const double omt = -std::expm1(b * ly);
  const double r1 = t * ly / omt;
  const double r2 = t * ly * ly / (omt * omt);
  const double a3 = a * a * a;
  const double a4 = a3 * a;
  const double a6 = a4 * a * a;
  *d1 = -2.0 / a + (2.0 / a3) * r1 - (4.0 / a3) * ly;
  *d2 = 2.0 / (a * a) - (6.0 / a4) * r1 + (12.0 / a4) * ly - (4.0 / a6) * r2;
}

FitResult finish(FitResult fit, const Sample& data, double ci_level) {
  fit.ci_level = ci_level;
  const LoglikBundle lb = loglik_bundle(Alpha(fit.estimate), data);
  fit.loglik = lb.loglik;
  const double n = static_cast<double>(data.size());
  if (lb.d2l_dalpha2 < 0.0) {
    // The tables print the inverse negative curvature as "Var" and pair it
    // with SE = sqrt(Var/n); estimator_variance keeps se = sqrt(.) coherent.
    fit.paper_variance = -1.0 / lb.d2l_dalpha2;
    fit.estimator_variance = fit.paper_variance / n;
    fit.se = std::sqrt(fit.estimator_variance);
    if (fit.converged) {
      const double z = norm_quantile(0.5 + 0.5 * ci_level);
      fit.ci_low = fit.estimate - z * fit.se;
      fit.ci_high = fit.estimate + z * fit.se;
    }
  } else {
    fit.estimator_variance = kNaN;
    fit.paper_variance = kNaN;
    fit.se = kNaN;
    fit.ci_low = kNaN;
    fit.ci_high = kNaN;
    if (fit.message.empty()) fit.message = "loglik curvature not negative at estimate";
  }
  return fit;
}

FitResult run_solver(Method method, const Sample& data, const OptimizerConfig& cfg,
                     double ci_level, const ScalarObjective& obj) {
  const double start = std::sqrt((-5.0 + std::sqrt(1.0 + 24.0 / data.mean())) / 2.0);
  const ScalarResult r = solve_scalar(obj, cfg, start);
  FitResult fit;
  fit.method = method;
  fit.estimate = std::min(std::max(r.x, cfg.bracket_low), cfg.bracket_high);
  fit.converged = r.converged;
  fit.iterations = r.iterations;
  fit.message = r.message;
  return finish(fit, data, ci_level);
}

void require_n(const Sample& data, std::size_t n, const char* who) {
  if (data.size() < n) {
    throw std::invalid_argument(std::string(who) + ": need at least " + std::to_string(n) +
                                " observations");
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Mom: return "mom";
    case Method::Mle: return "mle";
    case Method::Mps: return "mps";
    case Method::Ad: return "ad";
    case Method::Percentile: return "percentile";
    case Method::Cvm: return "cvm";
    case Method::Ls: return "ls";
    case Method::Wls: return "wls";
  }
  throw std::logic_error("method_name: unreachable");
}

Method method_from_name(const std::string& name) {
  for (Method m : all_methods()) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown estimation method: " + name);
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> kAll = {Method::Mom, Method::Mle,  Method::Mps,
                                           Method::Ad,  Method::Percentile, Method::Cvm,
                                           Method::Ls,  Method::Wls};
  return kAll;
}

ObjectiveEval mps_objective(const Alpha& alpha, const Sample& data, MpsSpacing spacing) {
  const std::vector<double>& y = data.values();
  const std::size_t n = y.size();
  if (y.front() == y.back()) {
    throw std::runtime_error("mps_objective: all observations tied, estimation impossible");
  }
  const std::vector<ObsDerivs> d = cdf_derivs(alpha, data);
  const std::size_t m = (spacing == MpsSpacing::NPlusOne) ? n + 1 : n;
  ObjectiveEval out;
  for (std::size_t i = 1; i <= m; ++i) {
    double D, Dp, Dpp;
    const bool tie = (i >= 2 && i <= n && y[i - 1] == y[i - 2]);
    if (tie) {
      // Cheng-Amin repair: zero spacing replaced by the log density
      double d1, d2;
      logf_derivs(alpha, y[i - 1], &d1, &d2);
      out.value += std::log(pdf(alpha, y[i - 1]));
      out.d1 += d1;
      out.d2 += d2;
      continue;
    }
    if (i == n + 1) {
      D = 1.0 - d[n - 1].F;
      Dp = -d[n - 1].Fp;
      Dpp = -d[n - 1].Fpp;
    } else if (i == 1) {
      D = d[0].F;
      Dp = d[0].Fp;
      Dpp = d[0].Fpp;
    } else {
      D = d[i - 1].F - d[i - 2].F;
      Dp = d[i - 1].Fp - d[i - 2].Fp;
      Dpp = d[i - 1].Fpp - d[i - 2].Fpp;
    }
    out.value += std::log(D);
    out.d1 += Dp / D;
    out.d2 += Dpp / D - (Dp / D) * (Dp / D);
  }
  const double scale = 1.0 / static_cast<double>(m);
  out.value *= scale;
  out.d1 *= scale;
  out.d2 *= scale;
  return out;
}

ObjectiveEval ad_objective(const Alpha& alpha, const Sample& data) {
  const std::size_t n = data.size();
  const std::vector<ObsDerivs> d = cdf_derivs(alpha, data);
  ObjectiveEval out;
  const double dn = static_cast<double>(n);
  out.value = -dn;
  for (std::size_t i = 1; i <= n; ++i) {
    const double w = (2.0 * static_cast<double>(i) - 1.0) / dn;
    const ObsDerivs& lo = d[i - 1];
    const ObsDerivs& hi = d[n - i];
    const double S = 1.0 - hi.F;
    out.value -= w * (std::log(lo.F) + std::log(S));
    out.d1 -= w * (lo.Fp / lo.F - hi.Fp / S);
    out.d2 -= w * (lo.Fpp / lo.F - (lo.Fp / lo.F) * (lo.Fp / lo.F) - hi.Fpp / S -
                   (hi.Fp / S) * (hi.Fp / S));
  }
  return out;
}

ObjectiveEval percentile_objective(const Alpha& alpha, const Sample& data,
                                   PercentilePositions positions) {
  const std::vector<double>& y = data.values();
  const std::size_t n = y.size();
  ObjectiveEval out;
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = (positions == PercentilePositions::LeftEdge)
                         ? (static_cast<double>(i) - 1.0) / static_cast<double>(n)
                         : static_cast<double>(i) / (static_cast<double>(n) + 1.0);
    if (p <= 0.0) {
      // Q(alpha, 0) = 0 for every alpha, so this residual is constant in alpha.
      out.value += y[i - 1] * y[i - 1];
      continue;
    }
    const double q = quantile(alpha, p);
    const double qp = dquantile_dalpha(alpha, p);
    const double qpp = d2quantile_dalpha2(alpha, p);
    const double r = y[i - 1] - q;
    out.value += r * r;
    out.d1 += -2.0 * r * qp;
    out.d2 += 2.0 * (qp * qp - r * qpp);
  }
  return out;
}

namespace {

ObjectiveEval cdf_distance_objective(const Alpha& alpha, const Sample& data,
                                     const std::vector<double>& targets,
                                     const std::vector<double>& weights, double constant) {
  const std::vector<ObsDerivs> d = cdf_derivs(alpha, data);
  ObjectiveEval out;
  out.value = constant;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = d[i].F - targets[i];
    const double w = weights[i];
    out.value += w * r * r;
    out.d1 += 2.0 * w * r * d[i].Fp;
    out.d2 += 2.0 * w * (d[i].Fp * d[i].Fp + r * d[i].Fpp);
  }
  return out;
}

}  // namespace

ObjectiveEval cvm_objective(const Alpha& alpha, const Sample& data) {
  const std::size_t n = data.size();
  std::vector<double> targets(n), weights(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * static_cast<double>(n));
  }
  return cdf_distance_objective(alpha, data, targets, weights,
                                1.0 / (12.0 * static_cast<double>(n)));
}

ObjectiveEval ls_objective(const Alpha& alpha, const Sample& data) {
  const std::size_t n = data.size();
  std::vector<double> targets(n), weights(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = static_cast<double>(i + 1) / (static_cast<double>(n) + 1.0);
  }
  return cdf_distance_objective(alpha, data, targets, weights, 0.0);
}

ObjectiveEval wls_objective(const Alpha& alpha, const Sample& data) {
  const std::size_t n = data.size();
  const double dn = static_cast<double>(n);
  std::vector<double> targets(n), weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ii = static_cast<double>(i + 1);
    targets[i] = ii / (dn + 1.0);
    weights[i] = (dn + 1.0) * (dn + 1.0) * (dn + 2.0) / (ii * (dn + 1.0 - ii));
  }
  return cdf_distance_objective(alpha, data, targets, weights, 0.0);
}

FitResult fit_mom(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  const double ybar = data.mean();
  if (!(ybar > 0.0 && ybar < 1.0)) {
    throw std::runtime_error("fit_mom: degenerate sample mean");
  }
  FitResult fit;
  fit.method = Method::Mom;
  fit.estimate = std::sqrt((-5.0 + std::sqrt(1.0 + 24.0 / ybar)) / 2.0);
  fit.converged = true;
  fit.iterations = 0;
  if (fit.estimate <= cfg.bracket_low || fit.estimate >= cfg.bracket_high) {
    fit.message = "moment estimate at bracket boundary";
  }
  return finish(fit, data, ci_level);
}

FitResult fit_mle(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  ScalarObjective obj;
  obj.maximize = true;
  obj.value = [&](double a) { return loglik_bundle(Alpha(a), data).loglik; };
  obj.grad = [&](double a) { return loglik_bundle(Alpha(a), data).dl_dalpha; };
  obj.hess = [&](double a) { return loglik_bundle(Alpha(a), data).d2l_dalpha2; };
  return run_solver(Method::Mle, data, cfg, ci_level, obj);
}

FitResult fit_mps(const Sample& data, const OptimizerConfig& cfg, double ci_level,
                  MpsSpacing spacing) {
  require_n(data, 2, "fit_mps");
  ScalarObjective obj;
  obj.maximize = true;
  obj.value = [&, spacing](double a) { return mps_objective(Alpha(a), data, spacing).value; };
  obj.grad = [&, spacing](double a) { return mps_objective(Alpha(a), data, spacing).d1; };
  obj.hess = [&, spacing](double a) { return mps_objective(Alpha(a), data, spacing).d2; };
  return run_solver(Method::Mps, data, cfg, ci_level, obj);
}

FitResult fit_ad(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  require_n(data, 2, "fit_ad");
  ScalarObjective obj;
  obj.maximize = false;
  obj.value = [&](double a) { return ad_objective(Alpha(a), data).value; };
  obj.grad = [&](double a) { return ad_objective(Alpha(a), data).d1; };
  obj.hess = [&](double a) { return ad_objective(Alpha(a), data).d2; };
  return run_solver(Method::Ad, data, cfg, ci_level, obj);
}

FitResult fit_percentile(const Sample& data, const OptimizerConfig& cfg, double ci_level,
                         PercentilePositions positions) {
  require_n(data, 2, "fit_percentile");
  ScalarObjective obj;
  obj.maximize = false;
  obj.value = [&, positions](double a) {
    return percentile_objective(Alpha(a), data, positions).value;
  };
  obj.grad = [&, positions](double a) {
    return percentile_objective(Alpha(a), data, positions).d1;
  };
  obj.hess = [&, positions](double a) {
    return percentile_objective(Alpha(a), data, positions).d2;
  };
  return run_solver(Method::Percentile, data, cfg, ci_level, obj);
}

FitResult fit_cvm(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  require_n(data, 2, "fit_cvm");
  ScalarObjective obj;
  obj.maximize = false;
  obj.value = [&](double a) { return cvm_objective(Alpha(a), data).value; };
  obj.grad = [&](double a) { return cvm_objective(Alpha(a), data).d1; };
  obj.hess = [&](double a) { return cvm_objective(Alpha(a), data).d2; };
  return run_solver(Method::Cvm, data, cfg, ci_level, obj);
}

FitResult fit_ls(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  require_n(data, 2, "fit_ls");
  ScalarObjective obj;
  obj.maximize = false;
  obj.value = [&](double a) { return ls_objective(Alpha(a), data).value; };
  obj.grad = [&](double a) { return ls_objective(Alpha(a), data).d1; };
  obj.hess = [&](double a) { return ls_objective(Alpha(a), data).d2; };
  return run_solver(Method::Ls, data, cfg, ci_level, obj);
}

FitResult fit_wls(const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  require_n(data, 2, "fit_wls");
  ScalarObjective obj;
  obj.maximize = false;
  obj.value = [&](double a) { return wls_objective(Alpha(a), data).value; };
  obj.grad = [&](double a) { return wls_objective(Alpha(a), data).d1; };
  obj.hess = [&](double a) { return wls_objective(Alpha(a), data).d2; };
  return run_solver(Method::Wls, data, cfg, ci_level, obj);
}

FitResult fit(Method method, const Sample& data, const OptimizerConfig& cfg, double ci_level) {
  switch (method) {
    case Method::Mom: return fit_mom(data, cfg, ci_level);
    case Method::Mle: return fit_mle(data, cfg, ci_level);
    case Method::Mps: return fit_mps(data, cfg, ci_level);
    case Method::Ad: return fit_ad(data, cfg, ci_level);
    case Method::Percentile: return fit_percentile(data, cfg, ci_level);
    case Method::Cvm: return fit_cvm(data, cfg, ci_level);
    case Method::Ls: return fit_ls(data, cfg, ci_level);
    case Method::Wls: return fit_wls(data, cfg, ci_level);
  }
  throw std::logic_error("fit: unreachable");
}

std::pair<double, double> confidence_interval(const FitResult& fit, double level) {
  if (!fit.converged || !std::isfinite(fit.se)) {
    throw std::runtime_error("confidence_interval: fit did not converge or SE unavailable");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence_interval: level must be in (0,1)");
  }
  const double z = norm_quantile(0.5 + 0.5 * level);
  return {fit.estimate - z * fit.se, fit.estimate + z * fit.se};
}

}  // namespace mbur
