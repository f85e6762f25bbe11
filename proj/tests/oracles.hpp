#pragma once

// Reference computations used only by the tests. Each oracle works from definitions (sorting,
// sums, quadrature, exhaustive enumeration) and never calls the library routine it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rikit/rikit.hpp"

namespace oracle {

inline double distribution(const std::vector<double>& v, const std::vector<double>& w, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) > s) acc += w[i];
  }
  return acc;
}

/// u*(t) = inf{s >= 0 : mu(s) <= t}; the infimum is attained at 0 or at one of the |v_i|.
inline double rearrangement_at(const std::vector<double>& v, const std::vector<double>& w, double t) {
  std::vector<double> levels{0.0};
  for (double x : v) levels.push_back(std::fabs(x));
  std::sort(levels.begin(), levels.end());
  for (double s : levels) {
    if (distribution(v, w, s) <= t) return s;
  }
  return levels.back();
}

inline double lp(const std::vector<double>& v, const std::vector<double>& w, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * std::pow(std::fabs(v[i]), p);
  return std::pow(acc, 1.0 / p);
}

/// Value of a step GridFn at t (right-closed cells).
inline double step_at(const rikit::GridFn& f, double t) {
  for (std::size_t i = 0; i < f.cells(); ++i) {
    if (t > f.lo(i) && t <= f.hi(i)) return f.values[i].to_double();
  }
  return t > f.support_end() ? f.tail : f.values.front().to_double();
}

/// Integral over (a, b): tanh-sinh when a = 0 (tolerates the end-point singularity),
/// adaptive Gauss-Kronrod otherwise.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  auto g = [&f](double t) { return f(t); };
  if (a == 0.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(g, a, b);
  }
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, 1e-13);
}

/// (int_0^inf u*(t)^q d(t^{q/p}))^{1/q} for a finitely supported step u*.
inline double lorentz_pq(const rikit::GridFn& u, double p, double q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.cells(); ++i) {
    const double v = u.values[i].to_double();
    if (v == 0.0) continue;
    acc += std::pow(v, q) *
           integrate([&](double t) { return (q / p) * std::pow(t, q / p - 1.0); }, u.lo(i), u.hi(i));
  }
  return std::pow(acc, 1.0 / q);
}

/// (int_0^inf (u*(t) phi(t))^q dt/t)^{1/q} for a finitely supported step u*. `kinks` lists the
/// points where phi is not smooth; every cell is split there before integrating.
inline double lambda_q(const rikit::GridFn& u, const std::function<double(double)>& phi, double q,
                       const std::vector<double>& kinks = {}) {
  auto f = [&](double t) { return std::pow(phi(t), q) / t; };
  double acc = 0.0;
  for (std::size_t i = 0; i < u.cells(); ++i) {
    const double v = u.values[i].to_double();
    if (v == 0.0) continue;
    std::vector<double> pts{u.lo(i)};
    for (double k : kinks) {
      if (k > u.lo(i) && k < u.hi(i)) pts.push_back(k);
    }
    std::sort(pts.begin() + 1, pts.end());
    pts.push_back(u.hi(i));
    double piece = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) piece += integrate(f, pts[k], pts[k + 1]);
    acc += std::pow(v, q) * piece;
  }
  return std::pow(acc, 1.0 / q);
}

/// sup over a fine log grid of (avg_0^t u*^p)^{1/p} phi(t); t in [t_lo, t_hi].
inline double marcinkiewicz_grid(const rikit::GridFn& u, const std::function<double(double)>& phi, double p,
                                 double t_lo, double t_hi, std::size_t n = 200000) {
  auto avg = [&](double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.cells(); ++i) {
      const double a = u.lo(i), b = std::min(u.hi(i), t);
      if (b > a) acc += std::pow(u.values[i].to_double(), p) * (b - a);
    }
    if (t > u.support_end()) acc += std::pow(u.tail, p) * (t - u.support_end());
    return std::pow(acc / t, 1.0 / p);
  };
  double best = 0.0;
  const double la = std::log(t_lo), lb = std::log(t_hi);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = std::exp(la + (lb - la) * static_cast<double>(k) / static_cast<double>(n));
    best = std::max(best, avg(t) * phi(t));
  }
  return best;
}

/// Single-curve modulus from the Lagrange conditions: a_v are trapezoid weights, mu_v point masses.
inline double single_curve_modulus(const std::vector<double>& a, const std::vector<double>& mu, double p) {
  if (p == 1.0) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, mu[i] / a[i]);
    return best;
  }
  const double pp = p / (p - 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(a[i], pp) * std::pow(mu[i], 1.0 - pp);
  return std::pow(acc, 1.0 - p);
}

/// Non-centered maximal function by enumerating every closed ball {y : d(c, y) <= d(c, z)}.
/// On a finite space these are exactly the distinct open balls of positive radius.
inline std::vector<double> maximal_brute(const rikit::MMS& s, const std::vector<double>& u, double p) {
  std::vector<double> best(s.n, 0.0);
  for (std::size_t c = 0; c < s.n; ++c) {
    for (std::size_t z = 0; z < s.n; ++z) {
      const double r = s.d(c, z);
      double m = 0.0, w = 0.0;
      for (std::size_t y = 0; y < s.n; ++y) {
        if (s.d(c, y) <= r) {
          m += s.weights[y] * std::pow(std::fabs(u[y]), p);
          w += s.weights[y];
        }
      }
      const double val = std::pow(m / w, 1.0 / p);
      for (std::size_t y = 0; y < s.n; ++y) {
        if (s.d(c, y) <= r) best[y] = std::max(best[y], val);
      }
    }
  }
  return best;
}

inline bool hajlasz_ok(const rikit::MMS& s, const std::vector<double>& u, const std::vector<double>& h,
                       double rel = 1e-9) {
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = x + 1; y < s.n; ++y) {
      const double rhs = s.d(x, y) * (h[x] + h[y]);
      if (std::fabs(u[x] - u[y]) > rhs * (1.0 + rel) + 1e-300) return false;
    }
  }
  return true;
}

inline bool lipschitz_ok(const rikit::MMS& s, const std::vector<double>& u, double L, double rel = 1e-12) {
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = x + 1; y < s.n; ++y) {
      if (std::fabs(u[x] - u[y]) > L * s.d(x, y) * (1.0 + rel)) return false;
    }
  }
  return true;
}

/// Box-constrained grid search for a convex objective with a feasibility predicate.
/// The box is scanned at `coarse`; the step then shrinks by 5x until it reaches 1e-3 and by 10x
/// afterwards down to `finest`, each pass scanning +-2.5 previous steps around the incumbent.
struct GridSearch {
  std::vector<double> lo, hi;
  double coarse = 0.02;
  double finest = 1e-7;
};

inline double grid_search(const GridSearch& g, const std::function<bool(const std::vector<double>&)>& feasible,
                          const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double>* argmin = nullptr) {
  const std::size_t d = g.lo.size();
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](const std::vector<double>& a, const std::vector<double>& b, double step) {
    std::vector<std::size_t> counts(d);
    for (std::size_t k = 0; k < d; ++k) {
      counts[k] = static_cast<std::size_t>(std::floor((b[k] - a[k]) / step + 1e-9)) + 1;
    }
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
      for (std::size_t k = 0; k < d; ++k) x[k] = std::min(a[k] + step * static_cast<double>(idx[k]), b[k]);
      if (feasible(x)) {
        const double f = objective(x);
        if (f < best) {
          best = f;
          best_x = x;
        }
      }
      std::size_t k = 0;
      while (k < d && ++idx[k] == counts[k]) idx[k++] = 0;
      if (k == d) break;
    }
  };
  std::vector<double> steps{g.coarse};
  while (steps.back() / 5.0 > 1e-3) steps.push_back(steps.back() / 5.0);
  if (steps.back() > 1e-3) steps.push_back(1e-3);
  while (steps.back() / 10.0 >= g.finest * 0.999) steps.push_back(steps.back() / 10.0);
  scan(g.lo, g.hi, steps[0]);
  for (std::size_t i = 1; i < steps.size() && !best_x.empty(); ++i) {
    const double radius = 2.5 * steps[i - 1];
    std::vector<double> a(d), b(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = std::max(g.lo[k], best_x[k] - radius);
      b[k] = std::min(g.hi[k], best_x[k] + radius);
    }
    scan(a, b, steps[i]);
  }
  if (argmin) *argmin = best_x;
  return best;
}

/// Weighted p-norm of a vector of nonnegative values (used as the objective of the micro programs).
inline double wnorm(const std::vector<double>& x, const std::vector<double>& w, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], p);
  return std::pow(acc, 1.0 / p);
}

/// Trapezoid integral of g along the vertex sequence.
inline double path_integral(const rikit::MMS& s, const std::vector<double>& g, const std::vector<std::size_t>& c) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) acc += s.d(c[k], c[k + 1]) * 0.5 * (g[c[k]] + g[c[k + 1]]);
  return acc;
}

}  // namespace oracle
