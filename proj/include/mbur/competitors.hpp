#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbur/types.hpp"

namespace mbur {

enum class Family { Mbur, Beta, Kumaraswamy, ToppLeone, UnitLindley };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Common interface over the unit-interval distributions used in the model
/// comparison: pdf, cdf, log-likelihood, parameter count, quantile.
class UnitDistribution {
 public:
  virtual ~UnitDistribution() = default;
  virtual Family family() const = 0;
  virtual int k() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual double pdf(double y) const = 0;
  virtual double cdf(double y) const = 0;
  virtual double log_pdf(double y) const;
  /// Default implementation bisects the cdf; closed forms override.
  virtual double quantile(double u) const;
  double loglik(const Sample& data) const;
};

class BetaDist : public UnitDistribution {
 public:
  BetaDist(double a, double b);
  Family family() const override { return Family::Beta; }
  int k() const override { return 2; }
  std::vector<double> params() const override { return {a_, b_}; }
  double pdf(double y) const override;
  double cdf(double y) const override;
  double log_pdf(double y) const override;

 private:
  double a_, b_, lnorm_;
};

class KumaraswamyDist : public UnitDistribution {
 public:
  KumaraswamyDist(double a, double b);
  Family family() const override { return Family::Kumaraswamy; }
  int k() const override { return 2; }
  std::vector<double> params() const override { return {a_, b_}; }
  double pdf(double y) const override;
  double cdf(double y) const override;
  double log_pdf(double y) const override;
  double quantile(double u) const override;

 private:
  double a_, b_;
};

class ToppLeoneDist : public UnitDistribution {
 public:
  explicit ToppLeoneDist(double theta);
  Family family() const override { return Family::ToppLeone; }
  int k() const override { return 1; }
  std::vector<double> params() const override { return {theta_}; }
  double pdf(double y) const override;
  double cdf(double y) const override;
  double log_pdf(double y) const override;
  double quantile(double u) const override;

 private:
  double theta_;
};

/// Unit-Lindley with density theta^2/(1+theta) (1-y)^{-3} exp(-theta y/(1-y)).
class UnitLindleyDist : public UnitDistribution {
 public:
  explicit UnitLindleyDist(double theta);
  Family family() const override { return Family::UnitLindley; }
  int k() const override { return 1; }
  std::vector<double> params() const override { return {theta_}; }
  double pdf(double y) const override;
  double cdf(double y) const override;
  double log_pdf(double y) const override;

 private:
  double theta_;
};

/// Adapter so MBUR can flow through the same comparison machinery.
class MburDist : public UnitDistribution {
 public:
  explicit MburDist(double alpha);
  Family family() const override { return Family::Mbur; }
  int k() const override { return 1; }
  std::vector<double> params() const override;
  double pdf(double y) const override;
  double cdf(double y) const override;
  double log_pdf(double y) const override;
  double quantile(double u) const override;

 private:
  Alpha alpha_;
};

std::unique_ptr<UnitDistribution> make_distribution(Family family,
                                                    const std::vector<double>& params);

struct CompetitorFit {
  Family family = Family::Beta;
  std::vector<double> estimates;
  std::vector<double> se;              // sqrt of inverse negative Hessian diagonal
  std::vector<double> paper_variance;  // n x estimator variance, table convention
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

/// Maximum likelihood for the competitor families. Topp-Leone is closed form,
/// Unit-Lindley is a safeguarded 1-D maximization, Beta and Kumaraswamy run
/// Nelder-Mead in log-parameter space from moment-matched starts.
CompetitorFit fit_mle_competitor(Family family, const Sample& data);

}  // namespace mbur
