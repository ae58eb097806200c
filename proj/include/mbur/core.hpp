#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mbur/rng.hpp"
#include "mbur/types.hpp"

namespace mbur {

// ---------------------------------------------------------------------------
// Distributional functions
// ---------------------------------------------------------------------------

double pdf(const Alpha& alpha, double y);
double log_pdf(const Alpha& alpha, double y);
double cdf(const Alpha& alpha, double y);

struct ReliabilityFunctions {
  double survival;
  double hazard;
  double reversed_hazard;
};
ReliabilityFunctions reliability_functions(const Alpha& alpha, double y);

/// Closed-form quantile: {0.5 - cos(theta + pi/3)}^(alpha^2) with
/// theta = arccos(1-2u)/3. Accepts the closed interval u in [0,1].
double quantile(const Alpha& alpha, double u);

/// Inverse-transform sampling. Deterministic for a fixed generator state.
std::vector<double> sample(const Alpha& alpha, std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Moments and summary measures
// ---------------------------------------------------------------------------

double raw_moment(const Alpha& alpha, int r);
MomentSummary moment_summary(const Alpha& alpha);
double incomplete_moment(const Alpha& alpha, int r, double t);
double stress_strength(const Alpha& alpha1, const Alpha& alpha2);

struct InequalityCurves {
  double lorenz;
  double bonferroni;
};
InequalityCurves inequality_curves(const Alpha& alpha, double t);
double gini(const Alpha& alpha);

/// Renyi entropy of order gamma (> 0, != 1). Integer orders use the exact
/// finite binomial series; other orders fall back to adaptive quadrature of
/// the density power. Throws std::domain_error when the integral diverges
/// (possible for alpha^2 > 2 and large gamma).
double renyi_entropy(const Alpha& alpha, double gamma);

double mean_residual_life(const Alpha& alpha, double y);

/// Antiderivative of the survival function, used by the mean residual life
/// and the theoretical TTT transform.
double survival_antiderivative(const Alpha& alpha, double y);

double lr_order_derivative(const Alpha& alpha1, const Alpha& alpha2, double y);
double lr_order_limit_at_one(const Alpha& alpha1, const Alpha& alpha2);

double pwm(const Alpha& alpha, int r, int s);

double order_statistic_pdf(const Alpha& alpha, const OrderStatSpec& spec, double y);
double order_statistic_cdf(const Alpha& alpha, const OrderStatSpec& spec, double y);

/// Interior mode when it exists (requires alpha^2 < 2), empty otherwise.
std::optional<double> mode(const Alpha& alpha);

// ---------------------------------------------------------------------------
// Sensitivities and likelihood pieces used by the estimators
// ---------------------------------------------------------------------------

struct CdfSensitivities {
  double dF_dalpha;
  double d2F_dalpha2;
};
CdfSensitivities cdf_sensitivities(const Alpha& alpha, double y);

double dquantile_dalpha(const Alpha& alpha, double u);
double d2quantile_dalpha2(const Alpha& alpha, double u);

struct LoglikBundle {
  double loglik;
  double dl_dalpha;
  double d2l_dalpha2;
};
LoglikBundle loglik_bundle(const Alpha& alpha, const Sample& data);

// ---------------------------------------------------------------------------
// Construction cross-check against the median-of-3 Rayleigh parent
// ---------------------------------------------------------------------------

/// Density of the median of three i.i.d. Rayleigh variables.
double mbr_pdf(const Alpha& alpha, double w);

/// Draws Rayleigh triples, transforms the medians through y = exp(-w^2) and
/// returns the KS distance between the transformed empirical CDF and cdf().
/// Also spot-checks the analytic change-of-variable identity.
double construction_check(const Alpha& alpha, std::size_t replicates, Rng& rng);

}  // namespace mbur
