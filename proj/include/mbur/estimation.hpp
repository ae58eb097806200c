#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mbur/optimize.hpp"
#include "mbur/types.hpp"

namespace mbur {

enum class Method { Mom, Mle, Mps, Ad, Percentile, Cvm, Ls, Wls };

std::string method_name(Method m);
Method method_from_name(const std::string& name);
const std::vector<Method>& all_methods();

/// Which spacings enter the MPS objective: the standard n+1 spacings with
/// both boundary terms, or the n-spacing variant without the upper one.
enum class MpsSpacing { NPlusOne, N };

/// Plotting positions for the percentile objective. LeftEdge uses (i-1)/n,
/// which is what reproduces the reference simulation results; Midrank is the
/// textbook i/(n+1) convention.
enum class PercentilePositions { LeftEdge, Midrank };

struct FitResult {
  Method method = Method::Mle;
  double estimate = 0.0;
  double estimator_variance = 0.0;  // inverse negative loglik Hessian at the estimate
  double paper_variance = 0.0;      // n x estimator_variance (table convention)
  double se = 0.0;
  double loglik = 0.0;
  double ci_level = 0.95;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

struct ObjectiveEval {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Objective evaluators with analytic derivatives in alpha, exposed so the
// derivative identities can be checked against finite differences.
ObjectiveEval mps_objective(const Alpha& alpha, const Sample& data,
                            MpsSpacing spacing = MpsSpacing::NPlusOne);
ObjectiveEval ad_objective(const Alpha& alpha, const Sample& data);
ObjectiveEval percentile_objective(const Alpha& alpha, const Sample& data,
                                   PercentilePositions positions = PercentilePositions::LeftEdge);
ObjectiveEval cvm_objective(const Alpha& alpha, const Sample& data);
ObjectiveEval ls_objective(const Alpha& alpha, const Sample& data);
ObjectiveEval wls_objective(const Alpha& alpha, const Sample& data);

FitResult fit_mom(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);
FitResult fit_mle(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);
FitResult fit_mps(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95,
                  MpsSpacing spacing = MpsSpacing::NPlusOne);
FitResult fit_ad(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);
FitResult fit_percentile(const Sample& data, const OptimizerConfig& cfg = {},
                         double ci_level = 0.95,
                         PercentilePositions positions = PercentilePositions::LeftEdge);
FitResult fit_cvm(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);
FitResult fit_ls(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);
FitResult fit_wls(const Sample& data, const OptimizerConfig& cfg = {}, double ci_level = 0.95);

/// Dispatch by method tag.
FitResult fit(Method method, const Sample& data, const OptimizerConfig& cfg = {},
              double ci_level = 0.95);

/// alpha_hat +/- z * se at the given level; throws on non-converged fits.
std::pair<double, double> confidence_interval(const FitResult& fit, double level);

}  // namespace mbur
