#pragma once

#include <boost/math/tools/minima.hpp>
#include <functional>
#include <string>
#include <vector>

#include "rikit/fundamental.hpp"
#include "rikit/quadrature.hpp"
#include "rikit/rearrange.hpp"

namespace rikit {

struct NormSpec {
  enum class Family {
    Lp,
    LorentzPQ,
    LorentzPInf,
    LambdaPhi,
    LambdaQPhi,
    Marcinkiewicz,
    WeakMarcinkiewicz,
    MarcinkiewiczP,
    MarcinkiewiczPLoc,
    OrliczLux,
    IntersectionMax,
  };
  Family family = Family::Lp;
  double p = 2.0;
  double q = 2.0;
  FundamentalFn phi;
  OrliczFn psi;
  std::vector<NormSpec> parts;

  static NormSpec lp(double p) { return make(Family::Lp, p, p); }
  static NormSpec lorentz(double p, double q) { return make(Family::LorentzPQ, p, q); }
  static NormSpec lorentz_inf(double p) { return make(Family::LorentzPInf, p, 0.0); }
  static NormSpec lambda(FundamentalFn phi) { return make(Family::LambdaPhi, 1.0, 1.0, phi); }
  static NormSpec lambda_q(FundamentalFn phi, double q) {
    return make(Family::LambdaQPhi, q, q, phi);
  }
  static NormSpec marcinkiewicz(FundamentalFn phi) {
    return make(Family::Marcinkiewicz, 1.0, 1.0, phi);
  }
  static NormSpec weak_marcinkiewicz(FundamentalFn phi) {
    return make(Family::WeakMarcinkiewicz, 1.0, 1.0, phi);
  }
  static NormSpec marcinkiewicz_p(FundamentalFn phi, double p) {
    return make(Family::MarcinkiewiczP, p, p, phi);
  }
  static NormSpec marcinkiewicz_p_loc(FundamentalFn phi, double p) {
    return make(Family::MarcinkiewiczPLoc, p, p, phi);
  }
  static NormSpec orlicz(OrliczFn psi) {
    NormSpec s = make(Family::OrliczLux, 1.0, 1.0);
    s.psi = std::move(psi);
    return s;
  }
  static NormSpec intersection(std::vector<NormSpec> parts) {
    NormSpec s;
    s.family = Family::IntersectionMax;
    s.parts = std::move(parts);
    s.validate();
    return s;
  }

  void validate() const {
    auto bad = [](const std::string& m) { throw Error(ErrorCode::UnsupportedCombination, m); };
    switch (family) {
      case Family::Lp:
      case Family::LorentzPInf:
        if (!(p >= 1.0 && std::isfinite(p))) bad("exponent p must be finite and >= 1");
        break;
      case Family::LorentzPQ:
        if (!(p >= 1.0 && std::isfinite(p))) bad("exponent p must be finite and >= 1");
        if (!(q > 0.0 && std::isfinite(q))) bad("Lorentz second exponent must be finite and > 0");
        break;
      case Family::LambdaQPhi:
        if (!(q > 0.0 && std::isfinite(q))) bad("Lambda^q exponent must be finite and > 0");
        phi.validate();
        break;
      case Family::MarcinkiewiczP:
      case Family::MarcinkiewiczPLoc:
        if (!(p >= 1.0 && std::isfinite(p))) bad("M^p exponent must be finite and >= 1");
        phi.validate();
        break;
      case Family::LambdaPhi:
      case Family::Marcinkiewicz:
      case Family::WeakMarcinkiewicz:
        phi.validate();
        break;
      case Family::OrliczLux:
        psi.validate();
        break;
      case Family::IntersectionMax:
        if (parts.empty()) bad("IntersectionMax needs at least one component");
        for (const auto& s : parts) s.validate();
        break;
    }
  }

  /// Families whose defining functional is only a quasi-norm.
  bool quasi_only() const {
    switch (family) {
      case Family::LorentzPQ:
        return q > p || q < 1.0;
      case Family::LorentzPInf:
      case Family::WeakMarcinkiewicz:
        return true;
      case Family::LambdaQPhi:
        return q < 1.0;
      case Family::IntersectionMax:
        for (const auto& s : parts) {
          if (s.quasi_only()) return true;
        }
        return false;
      default:
        return false;
    }
  }

 private:
  static NormSpec make(Family f, double p, double q, FundamentalFn phi = FundamentalFn::power(0.5)) {
    NormSpec s;
    s.family = f;
    s.p = p;
    s.q = q;
    s.phi = std::move(phi);
    s.validate();
    return s;
  }
};

namespace detail {

struct Cell {
  double lo, hi;  // hi may be +inf for the tail
  ExtReal v;
};

inline std::vector<Cell> cells_of(const GridFn& f) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    if (f.values[i] > ExtReal(0.0)) out.push_back({f.lo(i), f.hi(i), f.values[i]});
  }
  if (f.tail > 0.0) out.push_back({f.support_end(), std::numeric_limits<double>::infinity(), ExtReal(f.tail)});
  return out;
}

/// Integral of phi(t)^s / t over [lo, hi] (lo may be 0, hi finite).
inline ExtReal lambda_q_integral(const FundamentalFn& phi, double s, double lo, double hi) {
  if (!(hi > lo)) return ExtReal(0.0);
  if (std::isinf(hi)) return ExtReal::infinity();
  if (phi.is_pure_power()) {
    const double a = phi.alpha;
    const double cs = std::pow(phi.scale, s);
    if (a == 0.0) return lo == 0.0 ? ExtReal::infinity() : ExtReal(cs * std::log(hi / lo));
    return ExtReal(cs * (std::pow(hi, a * s) - std::pow(lo, a * s)) / (a * s));
  }
  std::vector<double> pts{lo};
  for (double b : phi.breaks()) {
    if (b > lo && b < hi) pts.push_back(b);
  }
  pts.push_back(hi);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double a = pts[k], b = pts[k + 1];
    auto f = [&](double t) { return std::pow(phi(t), s) / t; };
    if (phi.form == FundamentalFn::Form::MaxOf && phi.piecewise_regular()) {
      const double mid = a == 0.0 ? b * 0.5 : std::sqrt(a * b);
      const FundamentalFn* top = &phi.parts.front();
      for (const auto& part : phi.parts) {
        if (part(mid) > (*top)(mid)) top = &part;
      }
      const ExtReal piece = lambda_q_integral(*top, s, a, b);
      if (piece.is_inf()) return piece;
      acc += piece.value();
    } else if (a == 0.0) {
      if (phi.form == FundamentalFn::Form::Sampled) {
        const double slope = phi(b) / b;  // linear through the origin on the first piece
        acc += std::pow(slope, s) * std::pow(b, s) / s;
      } else {
        const SeriesResult r = integrate_from_zero(f, b);
        if (r.value.is_inf()) return r.value;
        acc += r.value.value();
      }
    } else if (phi.form == FundamentalFn::Form::Sampled) {
      acc += boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
    } else {
      acc += integrate_regular(f, a, b);
    }
  }
  return ExtReal(acc);
}

/// lim_{t->inf} phi(t)^p / t.
inline ExtReal growth_limit(const FundamentalFn& phi, double p) {
  if (std::isfinite(phi.domain_cap)) return ExtReal(0.0);
  switch (phi.form) {
    case FundamentalFn::Form::Power: {
      const double e = phi.alpha * p;
      if (std::fabs(e - 1.0) <= 1e-14) return ExtReal(std::pow(phi.scale, p));
      return e < 1.0 ? ExtReal(0.0) : ExtReal::infinity();
    }
    case FundamentalFn::Form::Sampled:
      return ExtReal(0.0);
    case FundamentalFn::Form::MaxOf: {
      ExtReal m(0.0);
      for (const auto& part : phi.parts) m = max(m, growth_limit(part, p));
      return m;
    }
    case FundamentalFn::Form::PsiMajorant:
      return growth_limit(*phi.inner, p);
    default: {
      auto g = [&](double t) { return std::pow(phi(t), p) / t; };
      const double a = g(1e100), b = g(1e200), c = g(1e300);
      if (!std::isfinite(c) || (c > b * (1.0 + 1e-9) && b > a * (1.0 + 1e-9))) return ExtReal::infinity();
      if (std::fabs(c - b) <= 1e-9 * b) return ExtReal(c);
      return ExtReal(0.0);
    }
  }
}

/// sup over 0 < t < t_hi of (avg_0^t ustar^p)^{1/p} * phi(t).
/// For piecewise-regular phi the supremum over each piece between break points is attained at
/// an end point (the function is quasi-convex there), so the candidate set is exact.
inline ExtReal marcinkiewicz_sup(const GridFn& ustar, const FundamentalFn& phi, double p,
                                 double t_hi) {
  const bool bounded = std::isfinite(t_hi);
  auto F = [&](double t) -> ExtReal {
    const ExtReal I = integral_pow(ustar, p, t);
    const double ph = phi(t);
    if (I.is_inf()) return ph > 0.0 ? ExtReal::infinity() : ExtReal(0.0);
    return ExtReal(std::pow(I.value() / t, 1.0 / p) * ph);
  };
  std::vector<double> cand;
  for (double b : ustar.breakpoints) {
    if (b > 0.0 && b < t_hi) cand.push_back(b);
  }
  for (double b : phi.breaks()) {
    if (b > 0.0 && b < t_hi) cand.push_back(b);
  }
  if (bounded) cand.push_back(t_hi);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Limit at 0+.
  ExtReal best(0.0);
  if (!ustar.values.empty() || ustar.tail > 0.0) {
    best = ustar(0.0) * ExtReal(phi.at_zero_plus());
  }
  for (double t : cand) best = max(best, F(t));

  if (!phi.piecewise_regular()) {
    std::vector<double> dense;
    const double first = cand.empty() ? 1.0 : cand.front();
    for (int k = 1; k <= 80; ++k) dense.push_back(std::ldexp(first, -k));
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
      const double la = std::log(cand[i]), lb = std::log(cand[i + 1]);
      for (int k = 1; k < 32; ++k) dense.push_back(std::exp(la + (lb - la) * k / 32.0));
    }
    if (!bounded) {
      const double last = cand.empty() ? 1.0 : cand.back();
      for (int k = 1; k <= 120; ++k) dense.push_back(last * std::pow(10.0, 0.25 * k));
    }
    double arg = 0.0;
    for (double t : dense) {
      const ExtReal v = F(t);
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    if (arg > 0.0 && best.is_finite()) {
      auto neg = [&](double lt) { return -F(std::exp(lt)).to_double(); };
      const double l = std::log(arg);
      const auto r = boost::math::tools::brent_find_minima(neg, l - 0.3, l + 0.3, 40);
      best = max(best, ExtReal(-r.second));
    }
  }

  if (!bounded) {
    // Region beyond the last candidate: quasi-convex there, so compare with the limit at inf.
    const double c = ustar.tail;
    if (c > 0.0) {
      best = max(best, ExtReal(c) * ExtReal(phi.at_infinity()));
    } else {
      const double T = cand.empty() ? 0.0 : cand.back();
      const ExtReal I = integral_pow(ustar, p, std::max(T, ustar.support_end()));
      const ExtReal L = growth_limit(phi, p);
      if (I > ExtReal(0.0)) {
        const ExtReal lim = I * L;
        best = max(best, lim.is_inf() ? lim : ExtReal(std::pow(lim.value(), 1.0 / p)));
      }
    }
  }
  return best;
}

inline double orlicz_luxemburg(const std::vector<Cell>& cells, const OrliczFn& psi) {
  if (cells.empty()) return 0.0;
  if (psi.kind == OrliczFn::Kind::Power) {
    double acc = 0.0;
    for (const auto& c : cells) acc += std::pow(c.v.value(), psi.r) * (c.hi - c.lo);
    return std::pow(acc, 1.0 / psi.r);
  }
  auto modular = [&](double lambda) {
    double acc = 0.0;
    for (const auto& c : cells) acc += psi(c.v.value() / lambda) * (c.hi - c.lo);
    return acc;
  };
  double hi = cells.front().v.value();
  while (modular(hi) > 1.0) hi *= 2.0;
  double lo = hi;
  while (modular(lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace detail

/// Norm of a decreasing rearrangement under the given spec.
inline ExtReal norm(const GridFn& ustar, const NormSpec& spec) {
  spec.validate();
  ustar.validate();
  require(ustar.is_decreasing(), "norm: GridFn must be decreasing");
  using F = NormSpec::Family;
  const auto cells = detail::cells_of(ustar);
  auto any_inf = [&] {
    for (const auto& c : cells) {
      if (c.v.is_inf() || std::isinf(c.hi)) return true;
    }
    return false;
  };
  switch (spec.family) {
    case F::Lp: {
      if (any_inf()) return ExtReal::infinity();
      double acc = 0.0;
      for (const auto& c : cells) acc += std::pow(c.v.value(), spec.p) * (c.hi - c.lo);
      return ExtReal(std::pow(acc, 1.0 / spec.p));
    }
    case F::LorentzPQ: {
      if (any_inf()) return ExtReal::infinity();
      const double e = spec.q / spec.p;
      double acc = 0.0;
      for (const auto& c : cells) {
        acc += std::pow(c.v.value(), spec.q) * (std::pow(c.hi, e) - std::pow(c.lo, e));
      }
      return ExtReal(std::pow(acc, 1.0 / spec.q));
    }
    case F::LorentzPInf: {
      if (any_inf()) return ExtReal::infinity();
      double best = 0.0;
      for (const auto& c : cells) best = std::max(best, c.v.value() * std::pow(c.hi, 1.0 / spec.p));
      return ExtReal(best);
    }
    case F::WeakMarcinkiewicz: {
      ExtReal best(0.0);
      for (const auto& c : cells) {
        const double ph = std::isinf(c.hi) ? spec.phi.at_infinity() : spec.phi(c.hi);
        best = max(best, c.v * ExtReal(ph));
      }
      return best;
    }
    case F::LambdaPhi: {
      ExtReal acc(0.0);
      for (const auto& c : cells) {
        const double top = std::isinf(c.hi) ? spec.phi.at_infinity() : spec.phi(c.hi);
        const ExtReal jump = std::isinf(top) ? ExtReal::infinity() : ExtReal(top - spec.phi(c.lo));
        acc = acc + c.v * jump;
      }
      return acc;
    }
    case F::LambdaQPhi: {
      ExtReal acc(0.0);
      for (const auto& c : cells) {
        const ExtReal J = detail::lambda_q_integral(spec.phi, spec.q, c.lo, c.hi);
        acc = acc + pow(c.v, spec.q) * J;
      }
      return pow(acc, 1.0 / spec.q);
    }
    case F::Marcinkiewicz:
      return detail::marcinkiewicz_sup(ustar, spec.phi, 1.0, std::numeric_limits<double>::infinity());
    case F::MarcinkiewiczP:
      return detail::marcinkiewicz_sup(ustar, spec.phi, spec.p, std::numeric_limits<double>::infinity());
    case F::MarcinkiewiczPLoc:
      return detail::marcinkiewicz_sup(ustar, spec.phi, spec.p, 1.0);
    case F::OrliczLux:
      if (any_inf()) return ExtReal::infinity();
      return ExtReal(detail::orlicz_luxemburg(cells, spec.psi));
    case F::IntersectionMax: {
      ExtReal best(0.0);
      for (const auto& s : spec.parts) best = max(best, norm(ustar, s));
      return best;
    }
  }
  return ExtReal(0.0);
}

inline ExtReal norm(const WeightedSamples& u, const NormSpec& spec) {
  return norm(decreasing_rearrangement(u), spec);
}

/// Norm of an indicator of a set of measure t.
inline double fundamental_function(const NormSpec& spec, double t) {
  require(t > 0.0, "fundamental_function: t must be positive");
  using F = NormSpec::Family;
  switch (spec.family) {
    case F::Lp:
    case F::LorentzPQ:
    case F::LorentzPInf:
      return std::pow(t, 1.0 / spec.p);
    case F::OrliczLux:
      return 1.0 / spec.psi.inverse(1.0 / t);
    case F::LambdaPhi:
    case F::Marcinkiewicz:
    case F::WeakMarcinkiewicz:
      return spec.phi(t);
    default:
      return norm(indicator(t), spec).to_double();
  }
}

/// Power in which a family's norm is additive over disjoint cells of u* (1 for supremum families).
inline double additive_exponent(const NormSpec& spec) {
  using F = NormSpec::Family;
  switch (spec.family) {
    case F::Lp:
      return spec.p;
    case F::LorentzPQ:
    case F::LambdaQPhi:
      return spec.q;
    default:
      return 1.0;
  }
}

/// Norm of a decreasing profile on (0, t_max] through dyadic refinements of depth 1..max_depth.
/// The profile is sampled at right cell end points (a lower step approximation). The increments
/// of norm^e, with e the additive exponent of the family, are classified as a series, so a
/// logarithmically divergent profile shows a stable increment ratio of one and yields the +inf
/// marker. Trace partials are in units of norm^e.
inline SeriesResult norm_of_profile(const std::function<double(double)>& profile, double t_max,
                                    const NormSpec& spec, std::size_t max_depth = 200) {
  const double e = additive_exponent(spec);
  double prev = 0.0;
  auto next = [&](std::size_t k, double& inc) {
    if (k >= max_depth) return false;
    const std::size_t depth = k + 1;
    GridFn g;
    std::vector<double> bps{0.0};
    for (std::size_t j = depth; j-- > 0;) bps.push_back(std::ldexp(t_max, -static_cast<int>(j)));
    g.breakpoints = bps;
    for (std::size_t i = 1; i < bps.size(); ++i) g.values.push_back(ExtReal(profile(bps[i])));
    const ExtReal n = norm(g, spec);
    if (n.is_inf()) {
      inc = std::numeric_limits<double>::infinity();
      return true;
    }
    const double v = std::pow(n.value(), e);
    inc = std::max(v - prev, 0.0);
    prev = v;
    return true;
  };
  SeriesResult r = classify_series(next);
  if (r.value.is_finite()) r.value = ExtReal(std::pow(r.value.value(), 1.0 / e));
  return r;
}

struct QuasiconcaveVerdict {
  bool ok = true;
  double t1 = 0.0, t2 = 0.0;  // violating pair when !ok
  std::string reason;
};

/// Checks f^q increasing and f^q/t decreasing on a grid over the open window (a, b).
inline QuasiconcaveVerdict is_quasiconcave(const FundamentalFn& f, double q, double a, double b,
                                           std::size_t grid_points = 2000) {
  require(q >= 1.0, "is_quasiconcave: power must be >= 1");
  require(b > a && a >= 0.0, "is_quasiconcave: empty window");
  const double hi = std::isinf(b) ? 1e12 : b;
  const double lo = a > 0.0 ? a : std::min(hi, 1.0) * 1e-9;
  std::vector<double> ts;
  const double la = std::log(lo), lb = std::log(hi);
  for (std::size_t k = 0; k <= grid_points; ++k) {
    ts.push_back(std::exp(la + (lb - la) * static_cast<double>(k) / grid_points));
  }
  for (double br : f.breaks()) {
    if (br > lo && br < hi) ts.push_back(br);
  }
  if (a > 0.0) ts.front() = a;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  // Open window: nudge end points inward so one-sided behaviour at the edge is not tested.
  if (b < std::numeric_limits<double>::infinity()) ts.back() = std::nextafter(hi, 0.0);
  QuasiconcaveVerdict v;
  constexpr double tol = 1e-12;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double f0 = std::pow(f(ts[k - 1]), q), f1 = std::pow(f(ts[k]), q);
    if (f1 < f0 * (1.0 - tol)) {
      v = {false, ts[k - 1], ts[k], "f^q decreases"};
      return v;
    }
    if (f1 / ts[k] > (f0 / ts[k - 1]) * (1.0 + tol)) {
      v = {false, ts[k - 1], ts[k], "f^q/t increases"};
      return v;
    }
  }
  return v;
}

/// Upper concave envelope of the node samples (with the origin), held constant past the last
/// node. The GridFn carries node values in the sampled format.
inline GridFn least_concave_majorant(const GridFn& f) {
  f.validate();
  const std::size_t n = f.cells();
  require(n > 0, "least_concave_majorant: no nodes");
  std::vector<double> t(f.breakpoints.begin(), f.breakpoints.end());
  std::vector<double> v{0.0};
  for (const auto& x : f.values) v.push_back(x.value());
  for (std::size_t i = 1; i <= n; ++i) {
    const bool inc = v[i] >= v[i - 1];
    const bool ratio_dec = i == 1 || v[i] / t[i] <= v[i - 1] / t[i - 1] * (1.0 + 1e-12);
    if (!inc || !ratio_dec) {
      throw Error(ErrorCode::NotQuasiconcave,
                  "samples not quasi-concave near t = " + std::to_string(t[i]));
    }
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i <= n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (t[b] - t[a]) * (v[i] - v[a]) - (v[b] - v[a]) * (t[i] - t[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  GridFn out;
  out.breakpoints = f.breakpoints;
  std::size_t seg = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    while (hull[seg + 1] < i) ++seg;
    const std::size_t a = hull[seg], b = hull[seg + 1];
    const double val = v[a] + (v[b] - v[a]) * (t[i] - t[a]) / (t[b] - t[a]);
    out.values.push_back(ExtReal(std::max(val, v[i])));
  }
  out.tail = std::max(f.tail, out.values.back().value());
  for (std::size_t i = 1; i <= n; ++i) {
    const double e = out.values[i - 1].value();
    if (!(v[i] <= e * (1.0 + 1e-12) && e <= 2.0 * v[i] * (1.0 + 1e-12))) {
      throw std::logic_error("least_concave_majorant: sandwich check failed");
    }
  }
  return out;
}

/// Node samples of the psi majorant on the given breakpoints (sampled GridFn format).
inline GridFn psi_majorant(const FundamentalFn& phi, double p, const std::vector<double>& grid) {
  require(p >= 1.0, "psi_majorant: p must be >= 1");
  const FundamentalFn psi = FundamentalFn::psi_majorant(phi, p);
  GridFn out;
  out.breakpoints = grid;
  for (std::size_t i = 1; i < grid.size(); ++i) out.values.push_back(ExtReal(psi(grid[i])));
  out.tail = out.values.empty() ? 0.0 : out.values.back().value();
  out.validate();
  return out;
}

/// ||u||_{Lambda^p_phi} / ||u||_{Lambda^q_phi}.
inline double lorentz_embedding_ratio(const GridFn& ustar, const FundamentalFn& phi, double q,
                                      double p) {
  require(q >= 1.0 && q < p && std::isfinite(p), "lorentz_embedding_ratio: need 1 <= q < p < inf");
  const ExtReal num = norm(ustar, NormSpec::lambda_q(phi, p));
  const ExtReal den = norm(ustar, NormSpec::lambda_q(phi, q));
  if (den.is_inf() || den == ExtReal(0.0)) {
    throw Error(ErrorCode::DegenerateRatio, "both Lambda norms vanish or are infinite");
  }
  return num.to_double() / den.value();
}

inline double lorentz_embedding_bound(double q, double p) {
  return std::pow(q, 1.0 / q - 1.0 / p);
}

}  // namespace rikit
