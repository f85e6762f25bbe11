#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rikit/indices.hpp"

namespace rikit {

struct CriterionB {
  ExtReal value;
  std::vector<double> grid;  // evaluation points t
  SeriesTrace trace;         // inner integral at the smallest grid point
};

/// sup over 0 < t < delta of phi(t)^p * avg_0^t phi^{-p}.
inline CriterionB criterion_B(const FundamentalFn& phi, double p, double delta = 1.0) {
  require(p >= 1.0 && std::isfinite(p), "criterion_B: p must be finite and >= 1");
  require(delta > 0.0 && delta <= 1.0, "criterion_B: delta must lie in (0, 1]");
  CriterionB out;
  if (phi.is_pure_power()) {
    const double e = phi.alpha * p;
    out.value = e < 1.0 ? ExtReal(1.0 / (1.0 - e)) : ExtReal::infinity();
    out.trace.divergent = e >= 1.0;
    return out;
  }
  constexpr int kSteps = 240;  // 60 octaves at four points per octave
  for (int j = kSteps; j >= 0; --j) out.grid.push_back(delta * std::exp2(-j / 4.0));
  auto inv = [&](double s) { return std::pow(phi(s), -p); };
  const SeriesResult base = integrate_from_zero(inv, out.grid.front());
  out.trace = base.trace;
  if (base.value.is_inf()) {
    out.value = ExtReal::infinity();
    return out;
  }
  double inner = base.value.value();
  double best = 0.0;
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    const double t = out.grid[k];
    if (k > 0) inner += integrate_regular(inv, out.grid[k - 1], t);
    best = std::max(best, std::pow(phi(t), p) * inner / t);
  }
  out.value = ExtReal(best);
  return out;
}

struct MPhiResult {
  ExtReal value;
  SeriesTrace trace;
};

/// m(s) = sup_{0<t<1} phi(t)/phi(st) on a geometric t grid plus break points.
inline double m_phi(const FundamentalFn& phi, double s) {
  std::vector<double> ts;
  for (int j = 1; j <= 480; ++j) ts.push_back(std::exp2(-j / 8.0));
  ts.push_back(std::nextafter(1.0, 0.0));
  for (double b : phi.breaks()) {
    if (b < 1.0) ts.push_back(b);
    if (b / s < 1.0) ts.push_back(b / s);
  }
  double best = 1.0;
  for (double t : ts) {
    const double den = phi(s * t);
    if (den > 0.0) best = std::max(best, phi(t) / den);
  }
  return best;
}

/// ||m_phi||_{L^p(0,1)}.
inline MPhiResult m_phi_norm(const FundamentalFn& phi, double p) {
  require(p >= 1.0 && std::isfinite(p), "m_phi_norm: p must be finite and >= 1");
  MPhiResult out;
  if (phi.is_pure_power()) {
    const double e = phi.alpha * p;
    out.value = e < 1.0 ? ExtReal(std::pow(1.0 / (1.0 - e), 1.0 / p)) : ExtReal::infinity();
    out.trace.divergent = e >= 1.0;
    return out;
  }
  const SeriesResult r =
      integrate_from_zero([&](double s) { return std::pow(m_phi(phi, s), p); }, 1.0);
  out.trace = r.trace;
  out.value = r.value.is_inf() ? r.value : ExtReal(std::pow(r.value.value(), 1.0 / p));
  return out;
}

enum class Verdict { True, False, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "inconclusive";
  }
}

struct ConditionResult {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  double value = 0.0;  // numeric certificate (+inf allowed)
  std::string certificate;
};

struct CriteriaReport {
  double p = 1.0;
  double delta = 1.0;
  bool complete_space = false;
  bool absolutely_continuous = false;
  std::vector<ConditionResult> conditions;           // i .. ix
  std::vector<ConditionResult> complete_conditions;  // i .. iv of the complete-space variant
  Verdict overall = Verdict::Inconclusive;
  std::vector<std::string> warnings;

  const ConditionResult& at(const std::string& id) const {
    for (const auto& c : conditions) {
      if (c.id == id) return c;
    }
    throw Error(ErrorCode::Validation, "no condition " + id);
  }
};

/// Fundamental function of a spec: closed forms where known, node samples otherwise.
inline FundamentalFn spec_fundamental(const NormSpec& spec) {
  using F = NormSpec::Family;
  switch (spec.family) {
    case F::Lp:
    case F::LorentzPQ:
    case F::LorentzPInf:
      return FundamentalFn::power(1.0 / spec.p);
    case F::LambdaPhi:
    case F::Marcinkiewicz:
    case F::WeakMarcinkiewicz:
      return spec.phi;
    case F::LambdaQPhi:
      if (spec.phi.is_pure_power() && spec.phi.alpha > 0.0) {
        const double a = spec.phi.alpha, q = spec.q;
        return FundamentalFn::power(a, spec.phi.scale * std::pow(a * q, -1.0 / q));
      }
      break;
    case F::OrliczLux:
      return FundamentalFn::orlicz_inverse(spec.psi);
    case F::IntersectionMax: {
      std::vector<FundamentalFn> ps;
      for (const auto& s : spec.parts) ps.push_back(spec_fundamental(s));
      return FundamentalFn::max_of(std::move(ps));
    }
    default:
      break;
  }
  std::vector<double> t, v;
  for (int k = -160; k <= 80; ++k) {
    const double x = std::exp2(k / 4.0);
    t.push_back(x);
    v.push_back(fundamental_function(spec, x));
  }
  return FundamentalFn::sampled(t, v, v.back());
}

namespace detail {

/// Lorentz-scale exponents (r, s) of specs equal to some L^{r,s} up to equivalent norms.
struct LorentzClass {
  double r = 0.0, s = 0.0;
};

inline std::optional<LorentzClass> lorentz_class(const NormSpec& spec) {
  using F = NormSpec::Family;
  const double inf = std::numeric_limits<double>::infinity();
  const bool power = spec.phi.is_pure_power() && spec.phi.alpha > 0.0;
  const double r = power ? 1.0 / spec.phi.alpha : 0.0;
  switch (spec.family) {
    case F::Lp:
      return LorentzClass{spec.p, spec.p};
    case F::LorentzPQ:
      return LorentzClass{spec.p, spec.q};
    case F::LorentzPInf:
      return LorentzClass{spec.p, inf};
    case F::WeakMarcinkiewicz:
      if (power) return LorentzClass{r, inf};
      break;
    case F::Marcinkiewicz:
      if (power) return LorentzClass{r, r == 1.0 ? 1.0 : inf};
      break;
    case F::LambdaPhi:
      if (power) return LorentzClass{r, 1.0};
      break;
    case F::LambdaQPhi:
      if (power) return LorentzClass{r, spec.q};
      break;
    case F::OrliczLux:
      if (spec.psi.kind == OrliczFn::Kind::Power) return LorentzClass{spec.psi.r, spec.psi.r};
      break;
    default:
      break;
  }
  return std::nullopt;
}

inline bool absolutely_continuous(const NormSpec& spec) {
  using F = NormSpec::Family;
  switch (spec.family) {
    case F::Lp:
    case F::LorentzPQ:
    case F::OrliczLux:
      return true;
    case F::LambdaPhi:
    case F::LambdaQPhi:
      return spec.phi.at_zero_plus() == 0.0;
    case F::IntersectionMax:
      return std::all_of(spec.parts.begin(), spec.parts.end(),
                         [](const NormSpec& s) { return absolutely_continuous(s); });
    default:
      return false;
  }
}

/// Geometric grid on (0, delta] with the origin prepended.
inline std::vector<double> window_grid(const FundamentalFn& phi, double delta) {
  std::vector<double> ts{0.0};
  for (int j = 480; j >= 0; --j) ts.push_back(delta * std::exp2(-j / 8.0));
  for (double b : phi.breaks()) {
    if (b > 0.0 && b < delta) ts.push_back(b);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

/// phi^q concave on [0, delta): chord slopes over the grid never increase.
inline bool power_concave(const FundamentalFn& phi, double q, double delta) {
  const auto ts = window_grid(phi, delta);
  double prev_slope = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double cur = std::pow(phi(ts[k]), q);
    const double slope = (cur - prev) / (ts[k] - ts[k - 1]);
    if (slope > prev_slope * (1.0 + 1e-9) + 1e-300) return false;
    prev_slope = slope;
    prev = cur;
  }
  return true;
}

/// phi(t)^q / t non-increasing on (0, delta).
inline bool power_ratio_decreasing(const FundamentalFn& phi, double q, double delta) {
  const auto ts = window_grid(phi, delta);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double cur = std::pow(phi(ts[k]), q) / ts[k];
    if (cur > prev * (1.0 + 1e-9)) return false;
    prev = cur;
  }
  return true;
}

/// Witness search for "phi^q has property P for some q > p". P is monotone in q (it passes
/// for every smaller exponent once it passes), so the smallest tested exponent decides
/// existence and bisection finds a large witness.
template <class Pred>
ConditionResult exponent_witness(const std::string& id, const FundamentalFn& phi, double p,
                                 Pred&& holds, const char* what) {
  ConditionResult c{id, Verdict::False, 0.0, ""};
  if (phi.is_pure_power()) {
    if (phi.alpha == 0.0 || 1.0 / phi.alpha > p) {
      c.verdict = Verdict::True;
      c.value = phi.alpha == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / phi.alpha;
      c.certificate = std::string("witness q = 1/alpha; ") + what;
    } else {
      c.certificate = std::string("fails for every q > p since alpha q > 1; ") + what;
    }
    return c;
  }
  const double q0 = p * (1.0 + 1e-3);
  if (!holds(p)) {
    c.certificate = std::string("fails already at q = p; ") + what;
    return c;
  }
  if (!holds(q0)) {
    c.verdict = Verdict::Inconclusive;
    c.certificate = std::string("holds at q = p but not at q = p(1+1e-3); ") + what;
    return c;
  }
  double lo = q0, hi = 64.0 * p;
  if (holds(hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? lo : hi) = mid;
    }
  }
  c.verdict = Verdict::True;
  c.value = lo;
  c.certificate = std::string("grid witness q; ") + what;
  return c;
}

}  // namespace detail

/// Evaluates the nine sufficient conditions for Lipschitz density (and the four relaxed
/// conditions on complete spaces when requested).
inline CriteriaReport density_criteria_report(const NormSpec& spec, double p, bool complete_space,
                                              double delta = 1.0) {
  spec.validate();
  require(p >= 1.0 && std::isfinite(p), "criteria: p must be finite and >= 1");
  require(delta > 0.0 && delta <= 1.0, "criteria: delta must lie in (0, 1]");
  using V = Verdict;
  const double inf = std::numeric_limits<double>::infinity();
  CriteriaReport rep;
  rep.p = p;
  rep.delta = delta;
  rep.complete_space = complete_space;
  rep.absolutely_continuous = detail::absolutely_continuous(spec);
  const FundamentalFn phi = spec_fundamental(spec);
  const auto lc = detail::lorentz_class(spec);
  const std::string grid_note =
      "grid: t = delta 2^{-j/4}, j = 0..240 (criterion B); t = delta 2^{-j/8}, j = 0..480 (shape checks)";

  // (iv) first: (i) may be derived from it.
  ConditionResult iv{"iv", V::False, 0.0, ""};
  {
    const CriterionB b = criterion_B(phi, p, delta);
    iv.value = b.value.to_double();
    iv.verdict = b.value.is_finite() ? V::True : V::False;
    iv.certificate = "sup phi^p avg phi^{-p} = " + (b.value.is_inf() ? std::string("inf") : std::to_string(iv.value)) +
                     (phi.is_pure_power() ? " (closed form)" : "; " + grid_note);
  }
  ConditionResult v = detail::exponent_witness(
      "v", phi, p, [&](double q) { return detail::power_concave(phi, q, delta); },
      "phi^q concave on [0, delta)");
  ConditionResult vi = detail::exponent_witness(
      "vi", phi, p, [&](double q) { return detail::power_ratio_decreasing(phi, q, delta); },
      "phi^q / t decreasing on (0, delta)");

  ConditionResult vii{"vii", V::False, 0.0, ""};
  {
    const MPhiResult m = m_phi_norm(phi, p);
    vii.value = m.value.to_double();
    vii.verdict = m.value.is_finite() ? V::True : V::False;
    vii.certificate = "||m_phi||_{L^p(0,1)} = " + (m.value.is_inf() ? std::string("inf") : std::to_string(vii.value));
  }

  // The grids stop at t = delta 2^-60. Each of (v), (vi), (vii) makes the average of phi^{-p}
  // bounded by a multiple of phi^{-p}, so a divergent criterion B overrules a grid witness.
  for (ConditionResult* c : {&v, &vi, &vii}) {
    if (c->verdict == V::True && iv.verdict == V::False && !phi.is_pure_power()) {
      c->verdict = V::Inconclusive;
      c->certificate += "; grid witness contradicted by the divergent average of phi^{-p}";
    }
  }

  const IndexReport zip = zippin_upper(phi);
  ConditionResult viii{"viii", V::Inconclusive, zip.beta_upper, ""};
  if (zip.beta_exact) {
    viii.verdict = zip.beta_upper < 1.0 / p ? V::True : V::False;
    viii.certificate = "beta = " + std::to_string(zip.beta_upper) + " (closed form)";
  } else {
    viii.verdict = zip.beta_upper < 1.0 / p ? V::True : V::Inconclusive;
    viii.certificate = "beta estimate (upper bound) = " + std::to_string(zip.beta_upper);
  }

  ConditionResult ix{"ix", V::Inconclusive, 0.0, ""};
  if (lc) {
    ix.value = 1.0 / lc->r;
    ix.verdict = ix.value < 1.0 / p ? V::True : V::False;
    ix.certificate = "Boyd index 1/r = " + std::to_string(ix.value) + " (closed form)";
  } else {
    try {
      const IndexReport boyd = boyd_upper_lowerbound(spec);
      ix.value = boyd.alpha_lower;
      ix.certificate = "only a lower estimate of the Boyd index is available: " + std::to_string(boyd.alpha_lower);
    } catch (const Error& e) {
      ix.certificate = std::string("no usable candidates: ") + e.what();
    }
  }

  ConditionResult ii{"ii", V::Inconclusive, 0.0, ""};
  ConditionResult iii{"iii", V::Inconclusive, 0.0, ""};
  ConditionResult i{"i", V::Inconclusive, 0.0, ""};
  if (lc) {
    const double r = lc->r, s = lc->s;
    const std::string rs = "L^{" + std::to_string(r) + "," + (std::isinf(s) ? std::string("inf") : std::to_string(s)) + "}";
    const bool emb = r > p || (r == p && s <= p);
    i.verdict = emb ? V::True : V::False;
    i.certificate = rs + (emb ? " embeds" : " does not embed") + " into M^p_loc";
    ii.verdict = emb ? V::True : V::False;
    ii.certificate = rs + (emb ? " embeds" : " does not embed") + " into Lambda^p_psi locally";
    const bool sandwich = r == p && s <= p;
    iii.verdict = sandwich ? V::True : V::False;
    iii.certificate = rs + (sandwich ? " sits between L^{p,1} and L^p" : " is not between L^{p,1} and L^p");
  } else {
    using F = NormSpec::Family;
    if ((spec.family == F::LambdaQPhi && spec.q <= p) || spec.family == F::LambdaPhi) {
      if (is_quasiconcave(spec.phi, p, 0.0, 1.0).ok) {
        ii.verdict = V::True;
        ii.certificate = "Lambda^s_phi with s <= p and phi^p quasi-concave on [0,1), so psi = phi";
      }
    }
    // phi comparable to t^{1/p} near zero is necessary for (iii).
    double lo = inf, hi = 0.0;
    for (int k = 0; k <= 600; ++k) {
      const double t = std::exp2(-k);
      const double ratio = phi(t) / std::pow(t, 1.0 / p);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    iii.value = hi / lo;
    if (!(hi / lo < 1e3)) {
      iii.verdict = V::False;
      iii.certificate = "phi / t^{1/p} varies by a factor " + std::to_string(hi / lo) + " on (2^-600, 1]";
    } else {
      iii.certificate = "phi comparable to t^{1/p} on the grid; embeddings not decidable from phi";
    }
    if (ii.verdict == V::True || iv.verdict == V::True) {
      i.verdict = V::True;
      i.certificate = ii.verdict == V::True ? "implied by (ii)" : "implied by (iv)";
    } else {
      i.certificate = "no sufficient route applies";
    }
  }
  rep.conditions = {i, ii, iii, iv, v, vi, vii, viii, ix};

  if (complete_space) {
    ConditionResult c1{"i", V::False, 0.0, ""}, c2{"ii", V::False, 0.0, ""};
    ConditionResult c3{"iii", V::Inconclusive, zip.beta_upper, ""}, c4{"iv", V::Inconclusive, ix.value, ""};
    if (phi.is_pure_power()) {
      const bool ok = phi.alpha * p <= 1.0;
      c1.verdict = c2.verdict = ok ? V::True : V::False;
      c1.certificate = "phi^p = c t^{alpha p}, concave iff alpha p <= 1";
      c2.certificate = "phi^p / t = c t^{alpha p - 1}, decreasing iff alpha p <= 1";
    } else {
      c1.verdict = detail::power_concave(phi, p, delta) ? V::True : V::False;
      c1.certificate = "grid check of phi^p concavity on [0, delta)";
      c2.verdict = detail::power_ratio_decreasing(phi, p, delta) ? V::True : V::False;
      c2.certificate = "grid check of phi^p / t monotonicity on (0, delta)";
    }
    if (zip.beta_exact) {
      c3.verdict = zip.beta_upper <= 1.0 / p ? V::True : V::False;
    } else if (zip.beta_upper <= 1.0 / p) {
      c3.verdict = V::True;
    }
    c3.certificate = viii.certificate;
    if (lc) c4.verdict = 1.0 / lc->r <= 1.0 / p ? V::True : V::False;
    c4.certificate = ix.certificate;
    rep.complete_conditions = {c1, c2, c3, c4};
  }

  auto any_true = [](const std::vector<ConditionResult>& cs) {
    return std::any_of(cs.begin(), cs.end(), [](const auto& c) { return c.verdict == V::True; });
  };
  auto all_false = [](const std::vector<ConditionResult>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.verdict == V::False; });
  };
  const bool some = any_true(rep.conditions) || any_true(rep.complete_conditions);
  if (!rep.absolutely_continuous) {
    rep.overall = V::False;
    rep.warnings.push_back("norm is not absolutely continuous; the density criteria do not apply");
  } else if (some) {
    rep.overall = V::True;
  } else if (all_false(rep.conditions) && all_false(rep.complete_conditions)) {
    rep.overall = V::False;
  }
  if (lc && std::isinf(lc->s) && lc->r == p) {
    rep.warnings.push_back("L^{p,inf}-type space at exponent p: known counterexample regime for density");
  }
  return rep;
}

/// Implications between conditions that every report must respect; returns the violated ones.
inline std::vector<std::string> implication_violations(const CriteriaReport& r) {
  std::vector<std::string> bad;
  auto t = [&](const char* id) { return r.at(id).verdict == Verdict::True; };
  auto f = [&](const char* id) { return r.at(id).verdict == Verdict::False; };
  if (t("v") && f("iv")) bad.push_back("(v) => (iv)");
  if (t("vi") && f("iv")) bad.push_back("(vi) => (iv)");
  if (t("vii") && f("iv")) bad.push_back("(vii) => (iv)");
  if (t("viii") && f("vii")) bad.push_back("(viii) => (vii)");
  if (t("ii") && f("i")) bad.push_back("(ii) => (i)");
  if (t("iv") && f("i")) bad.push_back("(iv) => (i)");
  return bad;
}

}  // namespace rikit
