#pragma once

namespace mbur {

/// ln Gamma(x), x > 0.
double log_gamma(double x);

/// Regularized incomplete beta I_y(a,b) via the Lentz continued fraction with
/// the usual symmetry switch. Throws on non-convergence (300 iterations).
double regularized_incomplete_beta(double a, double b, double y);

/// Standard normal CDF and quantile. The quantile uses a rational
/// approximation polished with one Halley step, good to ~1e-15.
double norm_cdf(double x);
double norm_quantile(double p);

}  // namespace mbur
