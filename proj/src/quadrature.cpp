#include "mbur/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mbur {
namespace {

struct SimpsonPanel {
  double fa, fm, fb;
  double estimate;
};

SimpsonPanel panel(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb) {
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  return {fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, const SimpsonPanel& whole, int depth) {
  const double m = 0.5 * (a + b);
  const SimpsonPanel left = panel(f, a, m, whole.fa, whole.fm);
  const SimpsonPanel right = panel(f, m, b, whole.fm, whole.fb);
  const double delta = left.estimate + right.estimate - whole.estimate;
  if (std::abs(delta) <= 15.0 * tol) {
    return left.estimate + right.estimate + delta / 15.0;
  }
  if (depth <= 0) {
    throw QuadratureError("adaptive Simpson: depth budget exhausted");
  }
  return adapt(f, a, m, 0.5 * tol, left, depth - 1) +
         adapt(f, m, b, 0.5 * tol, right, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const SimpsonPanel whole = panel(f, a, b, f(a), f(b));
  return adapt(f, a, b, tol, whole, 60);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& interior, double tol) {
  std::vector<double> knots;
  knots.push_back(a);
  for (double x : interior) {
    if (x > a && x < b) knots.push_back(x);
  }
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  const double piece_tol = tol / static_cast<double>(knots.size());
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    total += integrate(f, knots[i], knots[i + 1], piece_tol);
  }
  return total;
}

}  // namespace mbur
