#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mbur {

struct OptimizerConfig {
  double bracket_low = 1e-3;
  double bracket_high = 50.0;
  double tol_alpha = 1e-10;
  int max_iter = 200;
};

/// Smooth scalar objective with analytic derivatives. The optimum is located
/// as a root of grad; hess drives the Newton step; value (optional) is used
/// only to pick a best iterate on failure paths.
struct ScalarObjective {
  std::function<double(double)> value;
  std::function<double(double)> grad;
  std::function<double(double)> hess;
  bool maximize = true;
};

struct ScalarResult {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Newton iteration on grad = 0, safeguarded by bisection whenever a step
/// leaves the current sign-change bracket or the second derivative has the
/// wrong sign for the stated optimization direction.
ScalarResult solve_scalar(const ScalarObjective& obj, const OptimizerConfig& cfg,
                          double start_hint);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Standard Nelder-Mead minimization (coefficients 1, 2, 0.5, 0.5) with one
/// restart from the best vertex; converges when the simplex diameter falls
/// below diam_tol in the optimization coordinates.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double initial_step = 0.25,
                             double diam_tol = 1e-9, int max_iter = 5000);

}  // namespace mbur
