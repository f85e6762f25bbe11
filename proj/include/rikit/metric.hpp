#pragma once

#include <boost/math/tools/minima.hpp>
#include <numeric>
#include <vector>

#include "rikit/convex.hpp"
#include "rikit/curves.hpp"

namespace rikit {

namespace detail {

inline LinearRow curve_row(const MMS& s, const Curve& c, std::size_t offset, double rhs) {
  LinearRow r;
  for (const auto& [v, w] : trapezoid_weights(s, c)) r.a.push_back({offset + v, w});
  r.rhs = rhs;
  return r;
}

inline SolveResult to_result(const RawSolution& raw, std::size_t n, double optimum) {
  SolveResult r;
  r.optimum = optimum;
  r.minimizer.assign(raw.x.begin(), raw.x.begin() + static_cast<std::ptrdiff_t>(n));
  if (raw.x.size() > n) r.auxiliary.assign(raw.x.begin() + static_cast<std::ptrdiff_t>(n), raw.x.end());
  r.certificate = raw.cert;
  return r;
}

/// Runs the solver; on a stall rethrows with the optimum mapped through `finish`.
template <class Finish>
SolveResult run(const SeparableProgram& P, std::size_t n, const SolverOptions& opt, Finish&& finish) {
  try {
    const RawSolution raw = solve_separable(P, opt);
    return to_result(raw, n, finish(raw.objective));
  } catch (const SolverStall& e) {
    SolveResult r = e.result();
    r.optimum = finish(r.optimum);
    if (r.minimizer.size() > n) {
      r.auxiliary.assign(r.minimizer.begin() + static_cast<std::ptrdiff_t>(n), r.minimizer.end());
      r.minimizer.resize(n);
    }
    throw SolverStall(e.what(), r);
  }
}

}  // namespace detail

/// p-modulus: minimize sum mu rho^p subject to the trapezoid integral of rho along each curve >= 1.
inline SolveResult modulus(const MMS& s, const CurveFamily& gamma, double p,
                           const SolverOptions& opt = {}) {
  require(p >= 1.0 && std::isfinite(p), "modulus: p must be finite and >= 1");
  gamma.validate(s);
  SeparableProgram P;
  P.n = s.n;
  P.p = p;
  P.cost = s.weights;
  P.lower.assign(s.n, 0.0);
  for (const auto& c : gamma.curves) P.rows.push_back(detail::curve_row(s, c, 0, 1.0));
  return detail::run(P, s.n, opt, [](double v) { return v; });
}

/// min ||g||_p over g >= 0 with |u(a) - u(b)| <= integral of g along every curve.
inline SolveResult minimal_upper_gradient(const MMS& s, const PointFn& u, const CurveFamily& gamma,
                                          double p, const SolverOptions& opt = {}) {
  require(p >= 1.0 && std::isfinite(p), "minimal_upper_gradient: p must be finite and >= 1");
  check_point_fn(s, u, "minimal_upper_gradient");
  for (double x : u) require(std::isfinite(x), "minimal_upper_gradient: u must be finite");
  gamma.validate(s);
  SeparableProgram P;
  P.n = s.n;
  P.p = p;
  P.cost = s.weights;
  P.lower.assign(s.n, 0.0);
  for (const auto& c : gamma.curves) {
    const double gap = std::fabs(u[c.front()] - u[c.back()]);
    if (gap > 0.0) P.rows.push_back(detail::curve_row(s, c, 0, gap));
  }
  return detail::run(P, s.n, opt, [p](double v) { return std::pow(v, 1.0 / p); });
}

/// min ||h||_p over h >= 0 with |u(x) - u(y)| <= d(x,y) (h(x) + h(y)) for every pair.
inline SolveResult minimal_hajlasz(const MMS& s, const PointFn& u, double p,
                                   const SolverOptions& opt = {}) {
  require(p >= 1.0 && std::isfinite(p), "minimal_hajlasz: p must be finite and >= 1");
  check_point_fn(s, u, "minimal_hajlasz");
  for (double x : u) require(std::isfinite(x), "minimal_hajlasz: u must be finite");
  SeparableProgram P;
  P.n = s.n;
  P.p = p;
  P.cost = s.weights;
  P.lower.assign(s.n, 0.0);
  for (std::size_t a = 0; a < s.n; ++a) {
    for (std::size_t b = a + 1; b < s.n; ++b) {
      const double gap = std::fabs(u[a] - u[b]);
      if (gap > 0.0) P.rows.push_back({{{a, s.d(a, b)}, {b, s.d(a, b)}}, gap});
    }
  }
  return detail::run(P, s.n, opt, [p](double v) { return std::pow(v, 1.0 / p); });
}

/// Sobolev capacity: min ||u||_p + ||g||_p over u >= chi_E, g >= 0 an upper gradient of u on
/// the family. Variables are stacked as (u, g).
inline SolveResult capacity(const MMS& s, const std::vector<std::size_t>& E, const CurveFamily& gamma,
                            double p, const SolverOptions& opt = {}) {
  require(p >= 1.0 && std::isfinite(p), "capacity: p must be finite and >= 1");
  require(!E.empty(), "capacity: E must be nonempty");
  for (std::size_t e : E) require(e < s.n, "capacity: index out of range");
  gamma.validate(s);
  const std::size_t n = s.n;
  std::vector<double> lower(2 * n, 0.0);
  for (std::size_t e : E) lower[e] = 1.0;
  std::vector<LinearRow> rows;
  for (const auto& c : gamma.curves) {
    const std::size_t a = c.front(), b = c.back();
    if (a == b) continue;
    LinearRow r = detail::curve_row(s, c, n, 0.0);
    LinearRow r1 = r, r2 = r;
    r1.a.push_back({a, 1.0});
    r1.a.push_back({b, -1.0});
    r2.a.push_back({a, -1.0});
    r2.a.push_back({b, 1.0});
    rows.push_back(std::move(r1));
    rows.push_back(std::move(r2));
  }

  // Candidate with g = 0: u constant on classes joined by curve end points, 1 on classes meeting E.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& c : gamma.curves) parent[find(c.front())] = find(c.back());
  std::vector<bool> hot(n, false);
  for (std::size_t e : E) hot[find(e)] = true;
  SolveResult flat;
  flat.minimizer.assign(n, 0.0);
  flat.auxiliary.assign(n, 0.0);
  double mass = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (hot[find(v)]) {
      flat.minimizer[v] = 1.0;
      mass += s.weights[v];
    }
  }
  flat.optimum = std::pow(mass, 1.0 / p);
  flat.certificate.method = "constant on curve-connected classes (g = 0)";
  flat.certificate.slack.resize(rows.size());
  flat.certificate.dual.assign(rows.size(), 0.0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    std::vector<double> x(flat.minimizer);
    x.insert(x.end(), flat.auxiliary.begin(), flat.auxiliary.end());
    flat.certificate.slack[j] = rows[j].dot(x) - rows[j].rhs;
  }
  if (rows.empty()) return flat;

  auto solve_at = [&](double theta) {
    SeparableProgram P;
    P.n = 2 * n;
    P.p = p;
    P.lower = lower;
    P.rows = rows;
    P.cost.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      P.cost[i] = p > 1.0 ? s.weights[i] / std::pow(theta, p - 1.0) : s.weights[i];
      P.cost[n + i] = p > 1.0 ? s.weights[i] / std::pow(1.0 - theta, p - 1.0) : s.weights[i];
    }
    return solve_separable(P, opt);
  };
  auto norms = [&](const RawSolution& raw) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a += s.weights[i] * std::pow(raw.x[i], p);
      b += s.weights[i] * std::pow(raw.x[n + i], p);
    }
    return std::pow(a, 1.0 / p) + std::pow(b, 1.0 / p);
  };

  RawSolution best;
  if (p == 1.0) {
    best = solve_at(0.5);
  } else {
    // (A^{1/p} + B^{1/p})^p = min over theta of A / theta^{p-1} + B / (1 - theta)^{p-1}; the
    // inner value is jointly convex, so its minimum over theta is found by Brent's method.
    auto V = [&](double theta) { return solve_at(theta).objective; };
    const auto r = boost::math::tools::brent_find_minima(V, 1e-9, 1.0 - 1e-9, 40);
    best = solve_at(r.first);
  }
  SolveResult out = detail::to_result(best, n, norms(best));
  if (flat.optimum <= out.optimum) return flat;
  return out;
}

struct PoincareResult {
  double ratio = 0.0;  // may be +inf
  std::size_t center = 0;
  std::size_t level = 0;  // ball index among the distinct balls at the center
  double radius = 0.0;
};

/// Largest ratio avg_B |u - u_B| / (diam B * (avg_{lambda B} g^p)^{1/p}) over the distinct balls.
inline PoincareResult poincare_ratio(const MMS& s, const PointFn& u, const PointFn& g, double p,
                                     double lambda) {
  require(p >= 1.0 && lambda >= 1.0, "poincare_ratio: need p >= 1 and lambda >= 1");
  check_point_fn(s, u, "poincare_ratio");
  check_point_fn(s, g, "poincare_ratio");
  PoincareResult best;
  bool any = false;
  for (std::size_t c = 0; c < s.n; ++c) {
    const CenterBalls b = balls_at(s, c);
    for (std::size_t j = 0; j < b.prefix_end.size(); ++j) {
      const std::size_t m = b.prefix_end[j];
      double w = 0.0, mean = 0.0;
      double lo = u[b.order[0]], hi = lo;
      for (std::size_t k = 0; k < m; ++k) {
        w += s.weights[b.order[k]];
        mean += s.weights[b.order[k]] * u[b.order[k]];
        lo = std::min(lo, u[b.order[k]]);
        hi = std::max(hi, u[b.order[k]]);
      }
      // Constant on B: both sides vanish (the weighted mean may not reproduce u exactly).
      if (lo == hi) continue;
      mean /= w;
      double lhs = 0.0, diam = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        lhs += s.weights[b.order[k]] * std::fabs(u[b.order[k]] - mean);
        for (std::size_t l = k + 1; l < m; ++l) diam = std::max(diam, s.d(b.order[k], b.order[l]));
      }
      lhs /= w;
      if (!(lhs > 0.0)) continue;
      const double R = lambda * b.radius[j];
      double wg = 0.0, gp = 0.0;
      for (std::size_t y = 0; y < s.n; ++y) {
        if (s.d(c, y) < R) {
          wg += s.weights[y];
          gp += s.weights[y] * std::pow(g[y], p);
        }
      }
      const double rhs = std::pow(gp / wg, 1.0 / p);
      const double ratio = rhs > 0.0 ? lhs / (diam * rhs) : std::numeric_limits<double>::infinity();
      if (!any || ratio > best.ratio) best = {ratio, c, j, b.radius[j]};
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::AllDegenerate, "u is constant on every ball");
  return best;
}

}  // namespace rikit
