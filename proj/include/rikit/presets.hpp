#pragma once

#include <array>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rikit/io.hpp"

namespace rikit::presets {

/// A preset's output: a CSV table plus a JSON summary with the acceptance-relevant numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
    return os.str();
  }
};

struct PresetOutput {
  std::string id;
  Table table;
  io::json summary;
};

inline std::string cell(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
inline std::string cell(std::size_t x) { return std::to_string(x); }
inline std::string cell(int x) { return std::to_string(x); }
inline std::string cell(bool x) { return x ? "1" : "0"; }
inline std::string cell(const std::string& x) { return x; }
inline std::string cell(const char* x) { return x; }

/// Worker count: RIKIT_THREADS when set (at least 1), otherwise the hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("RIKIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 ? static_cast<std::size_t>(v) : 1;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i < n over a strided partition; results must be written to slot i so the output
/// order does not depend on scheduling. The first exception is rethrown after all workers join.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t T = std::min(thread_count(), std::max<std::size_t>(n, 1));
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errs(T);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < T; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += T) f(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
}

/// Independent stream per (seed, instance).
inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(instance >> 32)};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& g, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(g);
}
inline std::size_t pick(std::mt19937_64& g, std::size_t a, std::size_t b) {
  return std::uniform_int_distribution<std::size_t>(a, b)(g);
}

// ---- lorentz-embedding -------------------------------------------------------------------

struct EmbeddingInstance {
  GridFn ustar;
  FundamentalFn phi;
  double q = 1.0, p = 2.0;
};

/// Decreasing step function with 1..8 cells and a quasi-concave phi: a max of 1..3 scaled powers
/// or a concave piecewise-linear profile through the origin.
inline EmbeddingInstance embedding_instance(std::uint64_t seed, std::size_t i) {
  auto g = rng_for(seed, i);
  EmbeddingInstance in;
  const std::size_t cells = pick(g, 1, 8);
  std::vector<double> bp{0.0};
  std::vector<ExtReal> vals;
  double v = std::exp(uniform(g, -3.0, 3.0));
  for (std::size_t k = 0; k < cells; ++k) {
    bp.push_back(bp.back() + std::exp(uniform(g, -4.0, 3.0)));
    vals.push_back(ExtReal(v));
    v *= uniform(g, 0.05, 0.95);
  }
  in.ustar = make_grid_fn(bp, vals, 0.0);
  if (pick(g, 0, 2) < 2) {
    std::vector<FundamentalFn> parts;
    const std::size_t m = pick(g, 1, 3);
    for (std::size_t k = 0; k < m; ++k) parts.push_back(FundamentalFn::power(uniform(g, 0.05, 1.0), std::exp(uniform(g, -1.0, 1.0))));
    in.phi = m == 1 ? parts[0] : FundamentalFn::max_of(parts);
  } else {
    std::vector<double> t, y;
    double tt = 0.0, yy = 0.0, slope = std::exp(uniform(g, 0.0, 2.0));
    const std::size_t m = pick(g, 2, 6);
    for (std::size_t k = 0; k < m; ++k) {
      const double dt = std::exp(uniform(g, -3.0, 2.0));
      tt += dt;
      yy += slope * dt;
      t.push_back(tt);
      y.push_back(yy);
      slope *= uniform(g, 0.1, 1.0);
    }
    in.phi = FundamentalFn::sampled(t, y, yy);
  }
  in.p = uniform(g, 1.05, 8.0);
  in.q = uniform(g, 1.0, in.p - 0.01);
  return in;
}

inline PresetOutput lorentz_embedding(std::uint64_t seed, std::size_t count = 10000) {
  PresetOutput out{"lorentz-embedding", {{"instance", "q", "p", "ratio", "bound", "violation"}, {}}, {}};
  std::vector<std::vector<std::string>> rows(count);
  std::vector<char> bad(count, 0);
  parallel_for(count, [&](std::size_t i) {
    const auto in = embedding_instance(seed, i);
    const double r = lorentz_embedding_ratio(in.ustar, in.phi, in.q, in.p);
    const double b = lorentz_embedding_bound(in.q, in.p);
    bad[i] = r > b * (1.0 + 1e-10);
    rows[i] = {cell(i), cell(in.q), cell(in.p), cell(r), cell(b), cell(static_cast<bool>(bad[i]))};
  });
  out.table.rows = std::move(rows);
  std::size_t violations = 0;
  for (char b : bad) violations += b != 0;
  out.summary = {{"instances", count}, {"violations", violations}, {"seed", seed}};
  return out;
}

// ---- herz-riesz ---------------------------------------------------------------------------

/// Nonnegative random function: a skewed background plus one spike.
inline PointFn herz_riesz_function(std::size_t n, std::uint64_t seed) {
  auto g = rng_for(seed, 0x4852);
  const double e = std::array<double, 3>{1.0, 2.0, 4.0}[pick(g, 0, 2)];
  PointFn u(n);
  for (auto& x : u) x = std::pow(uniform(g, 0.0, 1.0), e);
  u[pick(g, 0, n - 1)] += uniform(g, 1.0, 10.0);
  return u;
}

/// Bundled families with n <= 200 and unit weights.
inline std::vector<std::string> herz_riesz_families() { return {"path:200", "grid:10,10", "tree:2,6"}; }

struct Envelope {
  double lo = 0.0, hi = 0.0;
};

/// Ratio extremes per family over calibration seeds 1000..2999 at p = 1, widened by 10% on each
/// side and rounded outward. Observed extremes: path [0.7192, 2.9985], grid [0.5729, 4.8675],
/// tree [0.4688, 3.9207].
inline Envelope recorded_envelope(const std::string& family) {
  if (family == "path:200") return {0.647, 3.30};
  if (family == "grid:10,10") return {0.515, 5.36};
  if (family == "tree:2,6") return {0.421, 4.32};
  throw Error(ErrorCode::Validation, "no recorded envelope for " + family);
}

inline PresetOutput herz_riesz(const std::string& family, std::uint64_t seed_lo, std::size_t seeds, double p = 1.0) {
  const Graph G = io::generate(family);
  PresetOutput out{"herz-riesz", {{"family", "seed", "min_ratio", "max_ratio"}, {}}, {}};
  std::vector<HerzRieszRatios> res(seeds);
  parallel_for(seeds, [&](std::size_t k) {
    res[k] = herz_riesz_ratios(G.space, herz_riesz_function(G.space.n, seed_lo + k), p);
  });
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t k = 0; k < seeds; ++k) {
    lo = std::min(lo, res[k].min_ratio);
    hi = std::max(hi, res[k].max_ratio);
    out.table.rows.push_back({family, cell(seed_lo + k), cell(res[k].min_ratio), cell(res[k].max_ratio)});
  }
  out.summary = {{"family", family}, {"p", p}, {"min_ratio", lo}, {"max_ratio", hi}, {"width", hi / lo},
                 {"seeds", {seed_lo, seed_lo + seeds - 1}}};
  if (p == 1.0) {
    const auto fams = herz_riesz_families();
    if (std::find(fams.begin(), fams.end(), family) != fams.end()) {
      const Envelope env = recorded_envelope(family);
      out.summary["envelope"] = {env.lo, env.hi};
      out.summary["inside_envelope"] = lo >= env.lo && hi <= env.hi;
    }
  }
  return out;
}

// ---- criteria-sweep -----------------------------------------------------------------------

inline std::vector<std::pair<double, double>> criteria_sweep_specs() {
  return {{2.0, 3.0}, {2.0, 4.0}, {3.0, 4.0}, {3.0, 6.0}, {4.0, 5.0}};
}

inline std::vector<double> criteria_sweep_exponents(double p0) {
  std::vector<double> ps;
  for (double p = 1.0; p < p0; p += 0.5) ps.push_back(p);
  ps.push_back(p0);
  return ps;
}

inline PresetOutput criteria_sweep() {
  PresetOutput out{"criteria-sweep",
                   {{"p0", "q0", "p", "complete", "overall", "true_conditions", "implication_violations"}, {}},
                   {}};
  std::size_t coherent = 0, total = 0, implication_failures = 0;
  for (const auto& [p0, q0] : criteria_sweep_specs()) {
    const NormSpec spec = NormSpec::lorentz(p0, q0);
    for (double p : criteria_sweep_exponents(p0)) {
      for (bool complete : {false, true}) {
        const CriteriaReport r = density_criteria_report(spec, p, complete);
        const auto viol = implication_violations(r);
        implication_failures += viol.size();
        std::string trues, vs;
        for (const auto& c : r.conditions) {
          if (c.verdict == Verdict::True) trues += (trues.empty() ? "" : " ") + c.id;
        }
        for (const auto& c : r.complete_conditions) {
          if (c.verdict == Verdict::True) trues += (trues.empty() ? "c" : " c") + c.id;
        }
        for (const auto& v : viol) vs += (vs.empty() ? "" : "; ") + v;
        const bool expect = p < p0 || complete;
        coherent += (r.overall == Verdict::True) == expect;
        ++total;
        out.table.rows.push_back({cell(p0), cell(q0), cell(p), cell(complete), to_string(r.overall), trues, vs});
      }
    }
  }
  out.summary = {{"evaluated", total}, {"coherent", coherent}, {"implication_violations", implication_failures}};
  return out;
}

// ---- modulus-grid -------------------------------------------------------------------------

inline PresetOutput modulus_grid(std::size_t m = 6, std::size_t k = 6,
                                 const std::vector<double>& ps = {1.0, 1.5, 2.0, 3.0}) {
  const Graph G = grid_graph(m, k);
  const CurveFamily fam = shortest_path_family(G);
  PresetOutput out{"modulus-grid", {{"p", "modulus", "kkt_residual", "rounds", "iterations", "method"}, {}}, {}};
  io::json mods = io::json::array();
  for (double p : ps) {
    const SolveResult r = modulus(G.space, fam, p);
    out.table.rows.push_back({cell(p), cell(r.optimum), cell(r.certificate.kkt_residual), cell(r.certificate.rounds),
                              cell(r.certificate.iterations), r.certificate.method});
    mods.push_back({{"p", p}, {"modulus", r.optimum}});
  }
  out.summary = {{"grid", {m, k}}, {"curves", fam.size()}, {"moduli", mods}};
  return out;
}

// ---- lip-trunc-sweep ----------------------------------------------------------------------

struct LipInstance {
  Graph graph;
  PointFn u;
  std::string kind;
};

/// Path with unit spacing and weights in [0.5, 1.5]. Even instances carry one or two tall spikes on
/// points of tiny weight; odd ones a steep ramp over a stretch of tiny-weight points.
inline LipInstance lip_trunc_instance(std::uint64_t seed, std::size_t i) {
  auto g = rng_for(seed, 0x4c54 + i);
  const std::size_t n = 20 + 5 * (i % 3);
  std::vector<double> w(n);
  for (auto& x : w) x = uniform(g, 0.5, 1.5);
  PointFn u(n);
  for (auto& x : u) x = uniform(g, -1.0, 1.0);
  LipInstance in;
  if (i % 2 == 0) {
    in.kind = "spike";
    const std::size_t spikes = pick(g, 1, 2);
    for (std::size_t s = 0; s < spikes; ++s) {
      const std::size_t at = pick(g, 1, n - 2);
      w[at] = std::pow(10.0, -uniform(g, 10.0, 14.0));
      u[at] = (pick(g, 0, 1) ? 1.0 : -1.0) * std::pow(10.0, uniform(g, 2.0, 4.0));
    }
  } else {
    in.kind = "ramp";
    const std::size_t len = pick(g, 3, 5), start = pick(g, 1, n - len - 1);
    const double top = std::pow(10.0, uniform(g, 2.0, 4.0));
    for (std::size_t k = 0; k < len; ++k) {
      w[start + k] = std::pow(10.0, -uniform(g, 10.0, 14.0));
      u[start + k] = top * static_cast<double>(k + 1) / static_cast<double>(len);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t k = 0; k + 1 < n; ++k) e.push_back({k, k + 1});
  in.graph = graph_from_edges(n, e, std::vector<double>(e.size(), 1.0), w);
  in.u = std::move(u);
  return in;
}

inline std::vector<double> lip_trunc_eps() { return {0.5, 0.1, 0.02}; }

inline PresetOutput lip_trunc_sweep(std::uint64_t seed, std::size_t instances = 20) {
  PresetOutput out{"lip-trunc-sweep",
                   {{"instance", "kind", "spec", "eps", "sigma0", "sigma", "E_size", "E_measure", "norm_gap",
                     "gap_below_eps", "invariants", "E_monotone"},
                    {}},
                   {}};
  const std::vector<NormSpec> specs{NormSpec::lp(2.0), NormSpec::lorentz(2.0, 1.0)};
  std::vector<std::vector<std::vector<std::string>>> rows(instances);
  std::vector<std::size_t> fails(instances, 0);
  parallel_for(instances, [&](std::size_t i) {
    const LipInstance in = lip_trunc_instance(seed, i);
    const MMS& s = in.graph.space;
    const PointFn h = hajlasz_pointwise(s, in.u);
    const CurveFamily fam = shortest_path_family(in.graph);
    for (const auto& spec : specs) {
      std::size_t prev = std::numeric_limits<std::size_t>::max();
      for (double eps : lip_trunc_eps()) {
        const LipTruncResult r = lipschitz_truncation(s, in.u, h, spec, fam, eps);
        const bool inv = !lip_trunc_invariant_failure(s, in.u, r).has_value();
        const bool gap = r.norm_gap < eps;
        const bool mono = r.E_eps.size() <= prev;
        prev = r.E_eps.size();
        fails[i] += !inv + !gap + !mono;
        rows[i].push_back({cell(i), in.kind, io::to_shorthand(spec), cell(eps), cell(r.sigma0), cell(r.sigma),
                           cell(r.E_eps.size()), cell(r.E_measure), cell(r.norm_gap), cell(gap), cell(inv),
                           cell(mono)});
      }
    }
  });
  std::size_t failures = 0, nonempty = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    failures += fails[i];
    for (auto& r : rows[i]) {
      nonempty += r[6] != "0";
      out.table.rows.push_back(std::move(r));
    }
  }
  out.summary = {{"instances", instances}, {"runs", instances * specs.size() * lip_trunc_eps().size()},
                 {"failures", failures}, {"runs_with_nonempty_E", nonempty}, {"seed", seed}};
  return out;
}

// ---- marcinkiewicz-gap --------------------------------------------------------------------

/// Truncation levels sigma = 1, 2, ... below max u on the radial profile, with gap and gradient
/// columns under the weak Marcinkiewicz norm of t^{1/alpha} and under L^2.
inline PresetOutput marcinkiewicz_gap(double alpha = 2.0, int dim = 3, std::size_t grid = 200) {
  require(dim > alpha, "marcinkiewicz-gap: the profile is unbounded only when n > alpha");
  const RadialProfile rp = radial_profile(alpha, dim, uniform_radii(grid));
  const double umax = *std::max_element(rp.u.begin(), rp.u.end());
  std::vector<double> sigmas;
  for (double k = 1.0; k < umax; k += 1.0) sigmas.push_back(k);
  require(!sigmas.empty(), "marcinkiewicz-gap: grid too coarse (max u <= 1)");
  const NormSpec wm = NormSpec::weak_marcinkiewicz(FundamentalFn::power(1.0 / alpha));
  const NormSpec l2 = NormSpec::lp(2.0);
  const auto a = truncation_convergence_report(rp.space, rp.u, CurveFamily{}, wm, sigmas, rp.g);
  const auto b = truncation_convergence_report(rp.space, rp.u, CurveFamily{}, l2, sigmas, rp.g);
  PresetOutput out{"marcinkiewicz-gap",
                   {{"sigma", "superlevel_size", "weak_marc_gap", "weak_marc_gradient", "lp2_gap", "lp2_gradient"}, {}},
                   {}};
  double wm_min = std::numeric_limits<double>::infinity(), l2_min = wm_min;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    out.table.rows.push_back({cell(sigmas[k]), cell(a[k].superlevel_size), cell(a[k].gap), cell(a[k].gradient),
                              cell(b[k].gap), cell(b[k].gradient)});
    wm_min = std::min(wm_min, a[k].gradient);
    l2_min = std::min(l2_min, b[k].gradient);
  }
  // Sanity: the analytic |f'| is an upper gradient of u along the radial chain.
  CurveFamily chain;
  for (std::size_t k = 0; k + 1 < grid; ++k) chain.curves.push_back({{k, k + 1}});
  const bool ug = is_upper_gradient(rp.space, rp.u, rp.g, chain).ok;
  out.summary = {{"alpha", alpha},
                 {"n", dim},
                 {"grid", grid},
                 {"gradient_is_upper_gradient", ug},
                 {"weak_marc_first", a.front().gradient},
                 {"weak_marc_min_over_first", wm_min / a.front().gradient},
                 {"lp2_first", b.front().gradient},
                 {"lp2_min_over_first", l2_min / b.front().gradient}};
  return out;
}

inline std::vector<std::string> catalogue() {
  return {"lorentz-embedding", "herz-riesz", "criteria-sweep", "modulus-grid", "lip-trunc-sweep", "marcinkiewicz-gap"};
}

}  // namespace rikit::presets
