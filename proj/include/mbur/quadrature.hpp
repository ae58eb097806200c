#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace mbur {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson integration of f over [a,b] to absolute tolerance tol.
/// Throws QuadratureError when the recursion depth budget is exhausted
/// before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

/// Same, but with the interval pre-split at the given interior points
/// (useful around a mode or an integrable endpoint singularity).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& interior, double tol = 1e-10);

}  // namespace mbur
