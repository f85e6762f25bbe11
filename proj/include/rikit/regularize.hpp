#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rikit/curves.hpp"
#include "rikit/metric.hpp"
#include "rikit/spaces.hpp"

namespace rikit {

// ---- truncation ---------------------------------------------------------------------------

struct TruncationResult {
  PointFn u_sigma;
  double sigma = 0.0;
  std::vector<std::size_t> superlevel;  // {|u| > sigma}
  ExtReal norm_gap;                     // ||u - u_sigma|| under the declared spec
};

namespace detail {

inline std::vector<double> unit_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

inline ExtReal sample_norm(const PointFn& f, const std::vector<double>& w, const NormSpec& spec) {
  WeightedSamples ws{f, w};
  return norm(ws, spec);
}

inline PointFn mask(const PointFn& f, const std::vector<std::size_t>& idx) {
  PointFn out(f.size(), 0.0);
  for (std::size_t i : idx) out[i] = f[i];
  return out;
}

inline std::vector<std::size_t> superlevel(const PointFn& f, double level) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::fabs(f[i]) > level) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// u_sigma = max(min(u, sigma), -sigma). The gap is measured in `spec` with the given weights
/// (unit weights when empty; L^1 when no spec is supplied).
inline TruncationResult truncate(const PointFn& u, double sigma, std::vector<double> weights = {},
                                 const std::optional<NormSpec>& spec = std::nullopt) {
  require(sigma > 0.0 && !std::isnan(sigma), "truncate: sigma must be positive");
  if (weights.empty()) weights = detail::unit_weights(u.size());
  require(weights.size() == u.size(), "truncate: weights have wrong length");
  TruncationResult r;
  r.sigma = sigma;
  r.u_sigma.resize(u.size());
  PointFn diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    r.u_sigma[i] = std::clamp(u[i], -sigma, sigma);
    diff[i] = u[i] - r.u_sigma[i];
  }
  r.superlevel = detail::superlevel(u, sigma);
  r.norm_gap = detail::sample_norm(diff, weights, spec.value_or(NormSpec::lp(1.0)));
  return r;
}

// ---- glueing ------------------------------------------------------------------------------

struct GlueResult {
  PointFn g;  // g with the level set {u = k} zeroed
  UpperGradientVerdict verdict;
  std::vector<std::string> warnings;
};

/// Zeroes g on E = {u = k} and re-checks the upper-gradient inequality on every curve. Each curve
/// meeting E is split at its first and last hit; when the family lacks those end pieces a
/// NotClosedUnderSubcurves warning is attached.
inline GlueResult glue_gradient(const MMS& s, const PointFn& u, const PointFn& g, double k,
                                const CurveFamily& gamma) {
  gamma.validate(s);
  const UpperGradientVerdict pre = is_upper_gradient(s, u, g, gamma);
  require(pre.ok, "glue_gradient: g is not an upper gradient of u on the family");
  GlueResult r;
  r.g = g;
  std::vector<bool> inE(s.n, false);
  for (std::size_t i = 0; i < s.n; ++i) {
    if (u[i] == k) {
      inE[i] = true;
      r.g[i] = 0.0;
    }
  }
  std::set<std::vector<std::size_t>> have;
  for (const auto& c : gamma.curves) {
    have.insert(c.vertices);
    have.insert({c.vertices.rbegin(), c.vertices.rend()});
  }
  std::size_t missing = 0;
  for (const auto& c : gamma.curves) {
    const auto& v = c.vertices;
    std::size_t first = v.size(), last = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (inE[v[i]]) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == v.size()) continue;
    if (first > 0 && !have.count({v.begin(), v.begin() + static_cast<std::ptrdiff_t>(first) + 1})) ++missing;
    if (last + 1 < v.size() && !have.count({v.begin() + static_cast<std::ptrdiff_t>(last), v.end()})) ++missing;
  }
  if (missing > 0) {
    r.warnings.push_back("NotClosedUnderSubcurves: " + std::to_string(missing) +
                         " end pieces at first/last hits of the level set are absent from the family");
  }
  r.verdict = is_upper_gradient(s, u, r.g, gamma);
  return r;
}

// ---- McShane extension --------------------------------------------------------------------

inline bool lipschitz_pair_ok(double du, double L, double d) {
  return std::fabs(du) <= L * d * (1.0 + 1e-12) + 1e-300;
}

/// w(x) = min over y in S of v(y) + L d(x, y); v is indexed like S.
inline PointFn mcshane_extend(const MMS& s, const std::vector<std::size_t>& S, const std::vector<double>& v,
                              double L) {
  require(L > 0.0 && std::isfinite(L), "mcshane_extend: L must be positive and finite");
  require(!S.empty(), "mcshane_extend: S must be nonempty");
  require(S.size() == v.size(), "mcshane_extend: v must have one value per point of S");
  for (std::size_t i = 0; i < S.size(); ++i) {
    require(S[i] < s.n, "mcshane_extend: index out of range");
    require(std::isfinite(v[i]), "mcshane_extend: v must be finite");
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      require(S[i] != S[j], "mcshane_extend: repeated index in S");
      if (!lipschitz_pair_ok(v[i] - v[j], L, s.d(S[i], S[j]))) {
        throw PairError(ErrorCode::NotLipschitzOnSubset, "v is not L-Lipschitz on S", S[i], S[j]);
      }
    }
  }
  PointFn w(s.n, std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t i = 0; i < S.size(); ++i) w[x] = std::min(w[x], v[i] + L * s.d(x, S[i]));
  }
  for (std::size_t i = 0; i < S.size(); ++i) w[S[i]] = v[i];
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = x + 1; y < s.n; ++y) {
      if (!lipschitz_pair_ok(w[x] - w[y], L, s.d(x, y))) {
        throw PairError(ErrorCode::NotLipschitzOnSubset, "extension failed post-verification", x, y);
      }
    }
  }
  return w;
}

// ---- sharp maximal function and Hajlasz gradients ------------------------------------------

/// sup over balls centred at x of (1/r) avg_B |u - u_B|. A ball holding the points at distance at
/// most d_j from x is realised for every r in (d_j, d_{j+1}], so the sup over r is 1/d_j.
inline PointFn sharp_maximal(const MMS& s, const PointFn& u) {
  check_point_fn(s, u, "sharp_maximal");
  for (double x : u) require(std::isfinite(x), "sharp_maximal: u must be finite");
  PointFn out(s.n, 0.0);
  for (std::size_t c = 0; c < s.n; ++c) {
    const CenterBalls b = balls_at(s, c);
    for (std::size_t j = 1; j < b.prefix_end.size(); ++j) {
      const std::size_t m = b.prefix_end[j];
      double w = 0.0, mean = 0.0;
      bool constant = true;
      for (std::size_t k = 0; k < m; ++k) {
        w += s.weights[b.order[k]];
        mean += s.weights[b.order[k]] * u[b.order[k]];
        constant = constant && u[b.order[k]] == u[c];
      }
      if (constant) continue;
      mean /= w;
      double osc = 0.0;
      for (std::size_t k = 0; k < m; ++k) osc += s.weights[b.order[k]] * std::fabs(u[b.order[k]] - mean);
      out[c] = std::max(out[c], osc / w / b.level_dist[j]);
    }
  }
  return out;
}

/// h(x) = max over y of |u(x) - u(y)| / (2 d(x, y)); always a Hajlasz gradient of u.
inline PointFn hajlasz_pointwise(const MMS& s, const PointFn& u) {
  check_point_fn(s, u, "hajlasz_pointwise");
  PointFn h(s.n, 0.0);
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = 0; y < s.n; ++y) {
      if (x != y) h[x] = std::max(h[x], std::fabs(u[x] - u[y]) / (2.0 * s.d(x, y)));
    }
  }
  return h;
}

/// First pair violating |u(x) - u(y)| <= d(x,y) (h(x) + h(y)) beyond a relative slack.
inline std::optional<std::pair<std::size_t, std::size_t>> hajlasz_violation(const MMS& s, const PointFn& u,
                                                                             const PointFn& h,
                                                                             double rel_tol = 1e-9) {
  check_point_fn(s, u, "hajlasz_violation");
  check_point_fn(s, h, "hajlasz_violation");
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = x + 1; y < s.n; ++y) {
      const double rhs = s.d(x, y) * (h[x] + h[y]);
      if (std::fabs(u[x] - u[y]) > rhs * (1.0 + rel_tol) + 1e-300) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

// ---- Lipschitz truncation ------------------------------------------------------------------

struct ScanRow {
  std::string stage;  // "sigma0" or "sigma"
  double sigma = 0.0;
  double test1 = 0.0;  // sigma0: ||u - v|| + ||2h chi||; sigma: ||sigma chi_{h > sigma}||
  double test2 = 0.0;  // sigma: ||2h chi_{h > sigma}||; unused for sigma0
  bool pass = false;
};

struct LipTruncResult {
  PointFn u_eps;
  double lipschitz_constant = 0.0;
  double sigma = 0.0;
  double sigma0 = 0.0;
  std::vector<std::size_t> E_eps;
  std::vector<std::size_t> A;
  double eta = 0.0;
  double c_delta = 1.0;
  double norm_gap = 0.0;
  double E_measure = 0.0;
  bool gap_gradient_verified = false;  // the tracked gradient of u - u_eps passed on the family
  std::vector<ScanRow> trace;
};

struct LipTruncOptions {
  double c_delta = 2.0;       // used only for quasi-normed specs
  std::size_t budget = 64;    // doublings along the shared grid
};

/// Checks the three typed invariants by brute force over all pairs; returns a message on failure.
inline std::optional<std::string> lip_trunc_invariant_failure(const MMS& s, const PointFn& u,
                                                              const LipTruncResult& r) {
  const double L = r.lipschitz_constant;
  for (std::size_t x = 0; x < s.n; ++x) {
    if (std::fabs(r.u_eps[x]) > r.sigma) return "bound |u_eps| <= sigma fails at " + std::to_string(x);
    for (std::size_t y = x + 1; y < s.n; ++y) {
      if (!lipschitz_pair_ok(r.u_eps[x] - r.u_eps[y], L, s.d(x, y))) {
        return "Lipschitz bound fails at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
      }
    }
  }
  std::vector<bool> inE(s.n, false);
  for (std::size_t i : r.E_eps) inE[i] = true;
  for (std::size_t x = 0; x < s.n; ++x) {
    if (!inE[x] && r.u_eps[x] != u[x]) return "u_eps differs from u off E_eps at " + std::to_string(x);
  }
  return std::nullopt;
}

/// Constructive Lipschitz approximation from a Hajlasz gradient h of u.
inline LipTruncResult lipschitz_truncation(const MMS& s, const PointFn& u, const PointFn& h,
                                           const NormSpec& spec, const CurveFamily& gamma, double eps,
                                           const LipTruncOptions& opt = {}) {
  require(eps > 0.0 && std::isfinite(eps), "lipschitz_truncation: eps must be positive");
  check_point_fn(s, u, "lipschitz_truncation");
  check_point_fn(s, h, "lipschitz_truncation");
  for (std::size_t i = 0; i < s.n; ++i) {
    require(std::isfinite(u[i]), "lipschitz_truncation: u must be finite");
    require(is_finite_nonneg(h[i]), "lipschitz_truncation: h must be finite and nonnegative");
  }
  gamma.validate(s);
  if (auto bad = hajlasz_violation(s, u, h)) {
    throw PairError(ErrorCode::HajlaszViolated, "h is not a Hajlasz gradient of u", bad->first, bad->second);
  }
  const auto& w = s.weights;
  auto nrm = [&](const PointFn& f) { return detail::sample_norm(f, w, spec).to_double(); };
  require(std::isfinite(nrm(u)) && std::isfinite(nrm(h)), "lipschitz_truncation: norm of u or h is infinite");

  LipTruncResult r;
  r.c_delta = spec.quasi_only() ? opt.c_delta : 1.0;
  require(r.c_delta >= 1.0, "lipschitz_truncation: c_delta must be >= 1");
  r.eta = eps / (6.0 * r.c_delta * r.c_delta);

  PointFn two_h(s.n);
  for (std::size_t i = 0; i < s.n; ++i) two_h[i] = 2.0 * h[i];

  // Shared dyadic grid: the first 2^k above 1/eps and not below the smallest positive |u|.
  double min_pos = std::numeric_limits<double>::infinity();
  for (double x : u) {
    if (x != 0.0) min_pos = std::min(min_pos, std::fabs(x));
  }
  int k = static_cast<int>(std::floor(std::log2(1.0 / eps))) - 1;
  while (!(std::ldexp(1.0, k) > 1.0 / eps)) ++k;
  while (std::isfinite(min_pos) && std::ldexp(1.0, k) < min_pos) ++k;

  // sigma0: ||u - v|| + ||2h chi_{|u| > sigma0}|| < eta.
  PointFn v;
  std::vector<std::size_t> P0;
  bool found = false;
  std::size_t step = 0;  // doublings spent, shared by both scans
  for (; step <= opt.budget; ++step, ++k) {
    const double sg = std::ldexp(1.0, k);
    const TruncationResult t = truncate(u, sg, w, spec);
    const std::vector<std::size_t> P = detail::superlevel(u, sg);
    const double val = t.norm_gap.to_double() + nrm(detail::mask(two_h, P));
    const bool pass = val < r.eta;
    r.trace.push_back({"sigma0", sg, val, 0.0, pass});
    if (pass) {
      r.sigma0 = sg;
      v = t.u_sigma;
      P0 = P;
      found = true;
      break;  // the sigma scan starts at sigma0 itself
    }
  }
  if (!found) throw Error(ErrorCode::BudgetExhausted, "no sigma0 on the scan grid passes the eta test");

  // sigma >= sigma0: ||sigma chi_A|| < eta and ||2h chi_A|| < eta with A = {h > sigma}.
  found = false;
  for (; step <= opt.budget; ++step, ++k) {
    const double sg = std::ldexp(1.0, k);
    const std::vector<std::size_t> A = detail::superlevel(h, sg);
    PointFn level(s.n, 0.0);
    for (std::size_t i : A) level[i] = sg;
    const double t1 = nrm(level), t2 = nrm(detail::mask(two_h, A));
    const bool pass = t1 < r.eta && t2 < r.eta;
    r.trace.push_back({"sigma", sg, t1, t2, pass});
    if (pass) {
      r.sigma = sg;
      r.A = A;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::BudgetExhausted, "no sigma on the scan grid passes the eta tests");

  r.lipschitz_constant = 2.0 * r.sigma;
  std::vector<bool> inA(s.n, false);
  for (std::size_t i : r.A) inA[i] = true;
  std::vector<std::size_t> keep;
  std::vector<double> vals;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (!inA[i]) {
      keep.push_back(i);
      vals.push_back(v[i]);
    }
  }
  if (keep.empty()) {
    r.u_eps.assign(s.n, 0.0);
  } else {
    r.u_eps = mcshane_extend(s, keep, vals, r.lipschitz_constant);
    for (double& x : r.u_eps) x = std::clamp(x, -r.sigma, r.sigma);
  }

  std::set<std::size_t> E(r.A.begin(), r.A.end());
  E.insert(P0.begin(), P0.end());
  r.E_eps.assign(E.begin(), E.end());
  for (std::size_t i : r.E_eps) r.E_measure += w[i];

  // Tracked upper gradient of u - u_eps: 2h on {|u| > sigma0} plus (2h + 2 sigma) on A.
  PointFn diff(s.n), G(s.n, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) diff[i] = u[i] - r.u_eps[i];
  for (std::size_t i : P0) G[i] += two_h[i];
  for (std::size_t i : r.A) G[i] += two_h[i] + r.lipschitz_constant;
  r.norm_gap = nrm(diff) + nrm(G);
  r.gap_gradient_verified = is_upper_gradient(s, diff, G, gamma).ok;

  if (auto bad = lip_trunc_invariant_failure(s, u, r)) {
    throw Error(ErrorCode::Validation, "lipschitz_truncation: invariant check failed: " + *bad);
  }
  return r;
}

// ---- truncation convergence ----------------------------------------------------------------

struct ConvergenceRow {
  double sigma = 0.0;
  double gap = 0.0;       // ||u - u_sigma||
  double gradient = 0.0;  // ||g chi_{|u| > sigma}||
  std::size_t superlevel_size = 0;
};

/// Rows (sigma, ||u - u_sigma||, ||g_u chi_{|u| > sigma}||). When g is not supplied it is the
/// minimal upper gradient of u on the family in L^p with p taken from an Lp spec.
inline std::vector<ConvergenceRow> truncation_convergence_report(const MMS& s, const PointFn& u,
                                                                 const CurveFamily& gamma,
                                                                 const NormSpec& spec,
                                                                 const std::vector<double>& sigmas,
                                                                 std::optional<PointFn> g = std::nullopt,
                                                                 const SolverOptions& opt = {}) {
  check_point_fn(s, u, "truncation_convergence_report");
  if (!g) {
    require(spec.family == NormSpec::Family::Lp,
            "truncation_convergence_report: supply g for non-Lp specs", ErrorCode::UnsupportedCombination);
    g = minimal_upper_gradient(s, u, gamma, spec.p, opt).minimizer;
  }
  check_point_fn(s, *g, "truncation_convergence_report");
  std::vector<ConvergenceRow> rows;
  for (double sg : sigmas) {
    const TruncationResult t = truncate(u, sg, s.weights, spec);
    ConvergenceRow row;
    row.sigma = sg;
    row.gap = t.norm_gap.to_double();
    row.gradient = detail::sample_norm(detail::mask(*g, t.superlevel), s.weights, spec).to_double();
    row.superlevel_size = t.superlevel.size();
    rows.push_back(row);
  }
  return rows;
}

// ---- radial counterexample profile ---------------------------------------------------------

/// Radial discretisation of f(t) = t / phi(t^n) with phi(t) = t^{1/alpha}: point i stands for the
/// shell (r_{i-1}, r_i] of R^n (a ball for i = 0), carries u = f(r_i) - f(1) and g = |f'(r_i)|, and
/// points are spaced by |r_i - r_j|.
struct RadialProfile {
  MMS space;
  std::vector<double> radii;
  PointFn u;
  PointFn g;
  double alpha = 2.0;
  int dim = 3;
};

inline RadialProfile radial_profile(double alpha, int dim, std::vector<double> radii) {
  require(alpha > 1.0 && dim >= 1, "radial_profile: need alpha > 1 and dim >= 1");
  require(!radii.empty() && radii.front() > 0.0, "radial_profile: radii must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    require(radii[i] > radii[i - 1], "radial_profile: radii must increase");
  }
  RadialProfile r;
  r.alpha = alpha;
  r.dim = dim;
  r.radii = radii;
  const std::size_t n = radii.size();
  const double omega = std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
  const double e = 1.0 - dim / alpha;  // f(t) = t^e
  const double R = radii.back();
  std::vector<double> w(n);
  r.space.n = n;
  r.space.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : radii[i - 1];
    w[i] = omega * (std::pow(radii[i], dim) - std::pow(lo, dim));
    r.u.push_back(std::max(std::pow(radii[i], e) - std::pow(R, e), 0.0));
    r.g.push_back(std::fabs(e) * std::pow(radii[i], e - 1.0));
    for (std::size_t j = 0; j < n; ++j) r.space.dist[i * n + j] = std::fabs(radii[i] - radii[j]);
  }
  r.space.weights = std::move(w);
  r.space.validate();
  return r;
}

inline std::vector<double> uniform_radii(std::size_t n) {
  std::vector<double> r;
  for (std::size_t i = 1; i <= n; ++i) r.push_back(static_cast<double>(i) / static_cast<double>(n));
  return r;
}

inline std::vector<double> geometric_radii(std::size_t n, double r_min) {
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(r_min * std::pow(1.0 / r_min, static_cast<double>(i) / (n - 1.0)));
  r.back() = 1.0;
  return r;
}

}  // namespace rikit
