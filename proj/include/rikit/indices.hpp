#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rikit/maximal.hpp"
#include "rikit/spaces.hpp"

namespace rikit {

/// Dilation growth samples and the derived exponent estimates.
struct IndexReport {
  std::vector<std::pair<double, double>> k_samples;  // (s, k(s))
  std::vector<std::pair<double, double>> h_samples;  // (s, lower bound of h(s))
  double beta_upper = 0.0;
  double alpha_lower = 0.0;
  bool beta_exact = false;        // closed form for pure powers
  bool alpha_exact = false;       // closed form for Lp / Lorentz specs
  bool lower_bound_only = true;   // alpha_lower comes from candidate functions
  std::string note;
};

inline std::vector<double> default_s_grid() {
  std::vector<double> s;
  for (int k = 1; k <= 30; ++k) s.push_back(std::ldexp(1.0, k));
  return s;
}

namespace detail {

/// sup over t > 0 of phi(s t) / phi(t) on a wide geometric grid plus the shape's break points
/// and their preimages under t -> s t.
inline double dilation_sup(const FundamentalFn& phi, double s) {
  std::vector<double> ts;
  for (int k = -1600; k <= 1600; ++k) ts.push_back(std::pow(10.0, k / 8.0));
  for (double b : phi.breaks()) {
    ts.push_back(b);
    ts.push_back(b / s);
  }
  double best = 0.0;
  for (double t : ts) {
    const double den = phi(t);
    if (den > 0.0 && std::isfinite(den)) best = std::max(best, phi(s * t) / den);
  }
  return best;
}

}  // namespace detail

/// k(s) = sup_t phi(st)/phi(t) and the upper fundamental index estimate min_s log k(s)/log s.
inline IndexReport zippin_upper(const FundamentalFn& phi,
                                const std::vector<double>& s_grid = default_s_grid()) {
  require(!s_grid.empty(), "zippin_upper: empty s grid");
  for (double s : s_grid) require(s > 1.0 && std::isfinite(s), "zippin_upper: s must exceed 1");
  IndexReport r;
  if (phi.is_pure_power()) {
    for (double s : s_grid) r.k_samples.push_back({s, std::pow(s, phi.alpha)});
    r.beta_upper = phi.alpha;
    r.beta_exact = true;
    r.note = "closed form for a power";
    return r;
  }
  r.beta_upper = 1.0;
  for (double s : s_grid) {
    const double k = detail::dilation_sup(phi, s);
    r.k_samples.push_back({s, k});
    r.beta_upper = std::min(r.beta_upper, std::log(k) / std::log(s));
  }
  r.beta_upper = std::max(r.beta_upper, 0.0);
  r.note = "grid supremum over t in [1e-200, 1e200] plus break points";
  return r;
}

/// Indicators of measure 2^k, k in [-20, 20], and a few decreasing power-like steps.
inline std::vector<GridFn> default_boyd_candidates() {
  std::vector<GridFn> c;
  for (int k = -20; k <= 20; ++k) c.push_back(indicator(std::ldexp(1.0, k)));
  for (double e : {0.1, 0.25, 0.5, 0.75}) {
    GridFn g;
    for (int k = -30; k <= 10; ++k) g.breakpoints.push_back(std::ldexp(1.0, k));
    g.breakpoints.insert(g.breakpoints.begin(), 0.0);
    for (std::size_t i = 1; i < g.breakpoints.size(); ++i) {
      g.values.push_back(ExtReal(std::pow(g.breakpoints[i], -e)));
    }
    c.push_back(std::move(g));
  }
  return c;
}

/// Lower bound h(s) >= max over candidates of ||E_{1/s} f|| / ||f||; exact for Lp and Lorentz.
inline IndexReport boyd_upper_lowerbound(const NormSpec& spec,
                                         const std::vector<GridFn>& candidates = default_boyd_candidates(),
                                         const std::vector<double>& s_grid = default_s_grid()) {
  spec.validate();
  require(!s_grid.empty(), "boyd_upper_lowerbound: empty s grid");
  IndexReport r;
  using F = NormSpec::Family;
  if (spec.family == F::Lp || spec.family == F::LorentzPQ || spec.family == F::LorentzPInf) {
    const double a = 1.0 / spec.p;
    for (double s : s_grid) r.h_samples.push_back({s, std::pow(s, a)});
    r.alpha_lower = a;
    r.alpha_exact = true;
    r.lower_bound_only = false;
    r.note = "closed form: dilation scales the norm by s^{1/p}";
    return r;
  }
  require(!candidates.empty(), "boyd_upper_lowerbound: no candidates", ErrorCode::DegenerateInput);
  std::vector<std::pair<const GridFn*, double>> usable;
  for (const auto& f : candidates) {
    require(f.is_decreasing(), "boyd_upper_lowerbound: candidates must be decreasing");
    const ExtReal n = norm(f, spec);
    if (n.is_finite() && n.value() > 0.0) usable.push_back({&f, n.value()});
  }
  if (usable.empty()) {
    throw Error(ErrorCode::DegenerateInput, "all candidates have zero or infinite norm");
  }
  double s_max = 0.0, h_at_max = 1.0;
  for (double s : s_grid) {
    require(s > 1.0, "boyd_upper_lowerbound: s must exceed 1");
    double h = 0.0;
    for (const auto& [f, nf] : usable) {
      const ExtReal nd = norm(dilation(*f, 1.0 / s), spec);
      h = std::max(h, nd.to_double() / nf);
    }
    r.h_samples.push_back({s, h});
    if (s > s_max) {
      s_max = s;
      h_at_max = h;
    }
  }
  r.alpha_lower = std::clamp(std::log(h_at_max) / std::log(s_max), 0.0, 1.0);
  r.note = "candidate supremum; lower bound for h(s) only";
  return r;
}

}  // namespace rikit
