#pragma once

#include <boost/math/tools/toms748_solve.hpp>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rikit/mms.hpp"

namespace rikit {

/// Linear constraint sum_i a_i x_i >= rhs.
struct LinearRow {
  std::vector<std::pair<std::size_t, double>> a;
  double rhs = 0.0;

  double dot(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [i, v] : a) s += v * x[i];
    return s;
  }
};

/// minimize sum_i cost_i x_i^p  subject to  rows, x >= lower.
struct SeparableProgram {
  std::size_t n = 0;
  double p = 2.0;
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<LinearRow> rows;
};

struct Certificate {
  std::vector<double> slack;  // a.x - rhs per constraint of the full family
  std::vector<double> dual;   // multiplier per constraint (0 outside the working set)
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  std::size_t rounds = 0;     // constraint-generation rounds
  bool non_unique = false;    // dual degeneracy seen (p = 1)
  std::string method;
};

struct SolveResult {
  double optimum = 0.0;
  PointFn minimizer;
  PointFn auxiliary;  // second block of variables where the program has one (capacity: g)
  Certificate certificate;
};

class SolverStall : public Error {
 public:
  SolverStall(const std::string& msg, SolveResult r)
      : Error(ErrorCode::SolverStall, msg), result_(std::move(r)) {}
  const SolveResult& result() const { return result_; }

 private:
  SolveResult result_;
};

struct SolverOptions {
  double tol = 1e-8;
  std::size_t budget = 100000;  // sweeps (p > 1) or pivots (p = 1) per inner solve
  std::size_t batch = 64;       // constraints added per generation round
};

struct RawSolution {
  std::vector<double> x;
  Certificate cert;
  double objective = 0.0;  // sum cost x^p
};

namespace detail {

inline double rhs_scale(const SeparableProgram& P) {
  double s = 0.0;
  for (const auto& r : P.rows) s = std::max(s, std::fabs(r.rhs));
  return s > 0.0 ? s : 1.0;
}

/// Dual coordinate ascent for p > 1 over the rows in `work`. lambda is indexed like P.rows.
inline std::size_t dual_ascent(const SeparableProgram& P, const std::vector<std::size_t>& work,
                               std::vector<double>& lambda, std::vector<double>& x,
                               const SolverOptions& opt, double& residual) {
  const double p = P.p;
  const double e = 1.0 / (p - 1.0);
  std::vector<double> z(P.n, 0.0);
  for (std::size_t j : work) {
    for (const auto& [i, v] : P.rows[j].a) z[i] += lambda[j] * v;
  }
  auto xi = [&](std::size_t i, double zi) {
    return zi > 0.0 ? std::max(P.lower[i], std::pow(zi / (p * P.cost[i]), e)) : P.lower[i];
  };
  const double scale = rhs_scale(P);
  std::size_t sweep = 0;
  for (; sweep < opt.budget; ++sweep) {
    for (std::size_t j : work) {
      const LinearRow& row = P.rows[j];
      for (const auto& [i, v] : row.a) z[i] -= lambda[j] * v;
      auto g = [&](double lam) {
        double s = -row.rhs;
        for (const auto& [i, v] : row.a) s += v * xi(i, z[i] + lam * v);
        return s;
      };
      double lam = 0.0;
      if (g(0.0) < 0.0) {
        double hi = std::max(lambda[j], 1e-12);
        int guard = 0;
        while (g(hi) < 0.0) {
          hi *= 4.0;
          require(++guard < 2000, "convex program infeasible: row cannot be satisfied");
        }
        std::uintmax_t it = 200;
        const auto r = boost::math::tools::toms748_solve(
            g, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), it);
        lam = r.second;
      }
      lambda[j] = lam;
      for (const auto& [i, v] : row.a) z[i] += lam * v;
    }
    for (std::size_t i = 0; i < P.n; ++i) x[i] = xi(i, z[i]);
    double infeas = 0.0, comp = 0.0, dual_rhs = 0.0;
    for (std::size_t j : work) {
      const double s = P.rows[j].dot(x) - P.rows[j].rhs;
      infeas = std::max(infeas, std::max(0.0, -s) / scale);
      comp += lambda[j] * std::fabs(s);
      dual_rhs += lambda[j] * std::fabs(P.rows[j].rhs);
    }
    residual = std::max(infeas, dual_rhs > 0.0 ? comp / dual_rhs : comp);
    if (residual <= opt.tol) return sweep + 1;
  }
  return sweep;
}

/// Dense dual simplex for p = 1: minimize c.y subject to A y >= b, y >= 0 (c >= 0, so the
/// all-surplus basis is dual feasible).
struct LpOutcome {
  std::vector<double> y;
  std::vector<double> dual;  // per working row
  std::size_t pivots = 0;
  bool non_unique = false;
  bool stalled = false;
};

inline LpOutcome dual_simplex(const std::vector<double>& c, const std::vector<LinearRow>& rows,
                              const std::vector<double>& b, std::size_t budget) {
  const std::size_t n = c.size(), m = rows.size(), cols = n + m;
  std::vector<std::vector<double>> T(m, std::vector<double>(cols + 1, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& [i, v] : rows[r].a) T[r][i] -= v;
    T[r][n + r] = 1.0;
    T[r][cols] = -b[r];
  }
  std::vector<double> rc(cols, 0.0);
  for (std::size_t i = 0; i < n; ++i) rc[i] = c[i];
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), n);
  double cmax = 1.0;
  for (double v : c) cmax = std::max(cmax, v);
  const double piv_tol = 1e-11, feas_tol = 1e-12;
  LpOutcome out;
  while (true) {
    std::size_t r = m;
    double worst = -feas_tol;
    for (std::size_t k = 0; k < m; ++k) {
      if (T[k][cols] < worst) {
        worst = T[k][cols];
        r = k;
      }
    }
    if (r == m) break;
    if (out.pivots >= budget) {
      out.stalled = true;
      break;
    }
    std::size_t enter = cols;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cols; ++k) {
      if (T[r][k] < -piv_tol) {
        const double ratio = rc[k] / -T[r][k];
        if (enter == cols || ratio < best - 1e-14 * (1.0 + best)) {
          best = ratio;
          enter = k;
        }
      }
    }
    require(enter < cols, "linear program infeasible");
    const double pv = T[r][enter];
    for (double& v : T[r]) v /= pv;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == r || T[k][enter] == 0.0) continue;
      const double f = T[k][enter];
      for (std::size_t q = 0; q <= cols; ++q) T[k][q] -= f * T[r][q];
    }
    const double f = rc[enter];
    for (std::size_t q = 0; q < cols; ++q) rc[q] -= f * T[r][q];
    basis[r] = enter;
    ++out.pivots;
  }
  out.y.assign(n, 0.0);
  std::vector<bool> is_basic(cols, false);
  for (std::size_t k = 0; k < m; ++k) {
    is_basic[basis[k]] = true;
    if (basis[k] < n) out.y[basis[k]] = std::max(0.0, T[k][cols]);
  }
  out.dual.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) out.dual[k] = std::max(0.0, rc[n + k]);
  for (std::size_t q = 0; q < cols; ++q) {
    if (!is_basic[q] && std::fabs(rc[q]) <= 1e-12 * cmax) out.non_unique = true;
  }
  return out;
}

}  // namespace detail

/// Rescales x so every row with nonnegative coefficients holds exactly in floating point.
inline void polish_nonnegative_rows(const SeparableProgram& P, std::vector<double>& x) {
  double f = 1.0;
  for (const auto& r : P.rows) {
    if (r.rhs <= 0.0) continue;
    const double ax = r.dot(x);
    if (ax > 0.0) f = std::max(f, r.rhs / ax);
  }
  if (f > 1.0) {
    f *= 1.0 + 1e-14;
    for (double& v : x) v *= f;
  }
}

/// Constraint generation around the inner solver. Rows enter the working set in batches of
/// the most violated ones; the loop ends when every row holds within tolerance.
inline RawSolution solve_separable(const SeparableProgram& P, const SolverOptions& opt = {}) {
  require(P.p >= 1.0 && std::isfinite(P.p), "solver: p must be finite and >= 1");
  require(P.cost.size() == P.n && P.lower.size() == P.n, "solver: size mismatch");
  for (double c : P.cost) require(c > 0.0 && std::isfinite(c), "solver: costs must be positive");
  for (const auto& r : P.rows) {
    for (const auto& [i, v] : r.a) require(i < P.n && std::isfinite(v), "solver: bad row entry");
  }
  RawSolution out;
  out.x = P.lower;
  out.cert.method = P.p > 1.0 ? "dual coordinate ascent + constraint generation"
                              : "dual simplex + constraint generation";
  std::vector<double> lambda(P.rows.size(), 0.0);
  std::vector<std::size_t> work;
  std::vector<bool> in_work(P.rows.size(), false);
  const double scale = detail::rhs_scale(P);
  const double feas = opt.tol * scale;
  double residual = 0.0;
  bool stalled = false;
  while (true) {
    std::vector<std::pair<double, std::size_t>> viol;
    for (std::size_t j = 0; j < P.rows.size(); ++j) {
      if (in_work[j]) continue;
      const double v = P.rows[j].rhs - P.rows[j].dot(out.x);
      if (v > feas) viol.push_back({v, j});
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    for (std::size_t k = 0; k < viol.size() && k < opt.batch; ++k) {
      work.push_back(viol[k].second);
      in_work[viol[k].second] = true;
    }
    ++out.cert.rounds;
    if (P.p > 1.0) {
      const std::size_t it = detail::dual_ascent(P, work, lambda, out.x, opt, residual);
      out.cert.iterations += it;
      if (residual > opt.tol) {
        stalled = true;
        break;
      }
    } else {
      std::vector<LinearRow> rows;
      std::vector<double> b;
      for (std::size_t j : work) {
        rows.push_back(P.rows[j]);
        b.push_back(P.rows[j].rhs - P.rows[j].dot(P.lower));
      }
      const auto lp = detail::dual_simplex(P.cost, rows, b, opt.budget);
      out.cert.iterations += lp.pivots;
      out.cert.non_unique = lp.non_unique;
      for (std::size_t i = 0; i < P.n; ++i) out.x[i] = P.lower[i] + lp.y[i];
      for (std::size_t k = 0; k < work.size(); ++k) lambda[work[k]] = lp.dual[k];
      if (lp.stalled) {
        stalled = true;
        break;
      }
    }
  }
  const bool nonneg = std::all_of(P.rows.begin(), P.rows.end(), [](const LinearRow& r) {
    return std::all_of(r.a.begin(), r.a.end(), [](const auto& e) { return e.second >= 0.0; });
  });
  if (nonneg && !stalled) polish_nonnegative_rows(P, out.x);
  out.cert.dual = lambda;
  out.cert.slack.resize(P.rows.size());
  double infeas = 0.0;
  for (std::size_t j = 0; j < P.rows.size(); ++j) {
    out.cert.slack[j] = P.rows[j].dot(out.x) - P.rows[j].rhs;
    infeas = std::max(infeas, std::max(0.0, -out.cert.slack[j]) / scale);
  }
  out.cert.kkt_residual = std::max(residual, infeas);
  for (std::size_t i = 0; i < P.n; ++i) out.objective += P.cost[i] * std::pow(out.x[i], P.p);
  if (stalled) {
    SolveResult r;
    r.optimum = out.objective;
    r.minimizer = out.x;
    r.certificate = out.cert;
    throw SolverStall("tolerance not reached within the iteration budget", r);
  }
  return out;
}

}  // namespace rikit
