#include "mbur/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbur {
namespace {

bool usable(double x) { return std::isfinite(x); }

}  // namespace

ScalarResult solve_scalar(const ScalarObjective& obj, const OptimizerConfig& cfg,
                          double start_hint) {
  if (!(cfg.bracket_low < cfg.bracket_high)) {
    throw std::invalid_argument("solve_scalar: bracket_low must be < bracket_high");
  }
  double lo = cfg.bracket_low;
  double hi = cfg.bracket_high;
  double glo = obj.grad(lo);
  double ghi = obj.grad(hi);
  ScalarResult res;

  const bool bracketed = usable(glo) && usable(ghi) &&
                         ((glo < 0.0 && ghi > 0.0) || (glo > 0.0 && ghi < 0.0));
  if (!bracketed) {
    // No sign change at the endpoints; scan a geometric grid and keep the
    // bracket closest to the start hint.
    constexpr int kScan = 256;
    const double ratio = std::pow(hi / lo, 1.0 / kScan);
    double best_lo = std::numeric_limits<double>::quiet_NaN();
    double best_hi = best_lo, best_glo = best_lo;
    double prev_x = lo, prev_g = glo;
    double best_dist = std::numeric_limits<double>::infinity();
    const double hint = usable(start_hint) ? start_hint : std::sqrt(lo * hi);
    for (int i = 1; i <= kScan; ++i) {
      const double x = (i == kScan) ? hi : lo * std::pow(ratio, i);
      const double g = obj.grad(x);
      if (usable(prev_g) && usable(g) &&
          ((prev_g < 0.0 && g > 0.0) || (prev_g > 0.0 && g < 0.0))) {
        const double mid = 0.5 * (prev_x + x);
        const double dist = std::abs(std::log(mid / hint));
        if (dist < best_dist) {
          best_dist = dist;
          best_lo = prev_x;
          best_hi = x;
          best_glo = prev_g;
        }
      }
      prev_x = x;
      prev_g = g;
    }
    if (!usable(best_lo)) {
      // Optimum is outside the bracket (or at its edge). Report the better
      // endpoint as the best iterate.
      res.converged = false;
      res.message = "no sign change of the derivative inside the bracket";
      if (obj.value) {
        const double vlo = obj.value(lo), vhi = obj.value(hi);
        const bool lo_better = obj.maximize ? (vlo >= vhi) : (vlo <= vhi);
        res.x = lo_better ? lo : hi;
      } else {
        res.x = hint;
      }
      return res;
    }
    lo = best_lo;
    hi = best_hi;
    glo = best_glo;
  }

  double x = (usable(start_hint) && start_hint > lo && start_hint < hi)
                 ? start_hint
                 : 0.5 * (lo + hi);
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    res.iterations = iter;
    const double g = obj.grad(x);
    if (!usable(g)) {
      res.message = "derivative not finite at iterate";
      res.x = 0.5 * (lo + hi);
      return res;
    }
    // shrink the bracket around the root
    if (g * glo <= 0.0) {
      hi = x;
    } else {
      lo = x;
      glo = g;
    }
    const double h = obj.hess(x);
    double next;
    const bool hess_ok = usable(h) && h != 0.0 && (obj.maximize ? h < 0.0 : h > 0.0);
    if (hess_ok) {
      next = x - g / h;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    const double delta = std::abs(next - x);
    x = next;
    if (delta < cfg.tol_alpha || hi - lo < cfg.tol_alpha) {
      res.x = x;
      res.converged = true;
      return res;
    }
  }
  res.x = x;
  res.converged = false;
  res.message = "maximum iterations reached";
  return res;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double initial_step,
                             double diam_tol, int max_iter) {
  const std::size_t dim = start.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");

  struct Vertex {
    std::vector<double> x;
    double v;
  };
  auto run = [&](std::vector<double> x0, int budget, int& used) {
    std::vector<Vertex> s;
    s.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> xi = x0;
      xi[i] += initial_step;
      s.push_back({xi, f(xi)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };
    std::sort(s.begin(), s.end(), by_value);
    int iter = 0;
    for (; iter < budget; ++iter) {
      double diam = 0.0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
          diam = std::max(diam, std::abs(s[i].x[d] - s[0].x[d]));
        }
      }
      if (diam < diam_tol) break;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += s[i].x[d];
      }
      for (double& c : centroid) c /= static_cast<double>(dim);

      auto blend = [&](double coef) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) {
          p[d] = centroid[d] + coef * (centroid[d] - s[dim].x[d]);
        }
        return p;
      };

      const std::vector<double> xr = blend(1.0);
      const double vr = f(xr);
      if (vr < s[0].v) {
        const std::vector<double> xe = blend(2.0);
        const double ve = f(xe);
        s[dim] = (ve < vr) ? Vertex{xe, ve} : Vertex{xr, vr};
      } else if (vr < s[dim - 1].v) {
        s[dim] = {xr, vr};
      } else {
        const std::vector<double> xc = blend(vr < s[dim].v ? 0.5 : -0.5);
        const double vc = f(xc);
        if (vc < std::min(vr, s[dim].v)) {
          s[dim] = {xc, vc};
        } else {
          for (std::size_t i = 1; i < s.size(); ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
              s[i].x[d] = s[0].x[d] + 0.5 * (s[i].x[d] - s[0].x[d]);
            }
            s[i].v = f(s[i].x);
          }
        }
      }
      std::sort(s.begin(), s.end(), by_value);
    }
    used = iter;
    return s[0];
  };

  int used1 = 0, used2 = 0;
  Vertex best = run(start, max_iter, used1);
  // one restart from the best vertex guards against premature collapse
  Vertex second = run(best.x, max_iter - used1 > 0 ? max_iter - used1 : 100, used2);
  if (second.v < best.v) best = second;

  NelderMeadResult out;
  out.x = best.x;
  out.value = best.v;
  out.iterations = used1 + used2;
  out.converged = used1 + used2 < 2 * max_iter;
  return out;
}

}  // namespace mbur
