#pragma once

#include <vector>

#include "rikit/mms.hpp"
#include "rikit/rearrange.hpp"

namespace rikit {

/// M_p u*(t) = (avg over (0,t] of ustar^p)^{1/p}.
inline ExtReal maximal_decreasing(const GridFn& ustar, double p, double t) {
  require(p >= 1.0 && t > 0.0, "maximal_decreasing: need p >= 1 and t > 0");
  const ExtReal I = integral_pow(ustar, p, t);
  if (I.is_inf()) return I;
  return ExtReal(std::pow(I.value() / t, 1.0 / p));
}

/// Non-centered maximal function over all distinct open balls (exact brute force).
inline PointFn maximal_metric(const MMS& s, const PointFn& u, double p) {
  require(p >= 1.0, "maximal_metric: p must be >= 1");
  check_point_fn(s, u, "maximal_metric");
  for (double x : u) require(std::isfinite(x), "maximal_metric: u must be finite");
  std::vector<double> best(s.n, 0.0);
  std::vector<double> mean;
  for (std::size_t c = 0; c < s.n; ++c) {
    const CenterBalls b = balls_at(s, c);
    mean.assign(b.prefix_end.size(), 0.0);
    double num = 0.0, den = 0.0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < b.prefix_end.size(); ++j) {
      for (; k < b.prefix_end[j]; ++k) {
        const std::size_t y = b.order[k];
        num += s.weights[y] * std::pow(std::fabs(u[y]), p);
        den += s.weights[y];
      }
      mean[j] = num / den;
    }
    // A point in level j belongs to every ball j' >= j.
    double suffix = 0.0;
    for (std::size_t j = b.prefix_end.size(); j-- > 0;) {
      suffix = std::max(suffix, mean[j]);
      const std::size_t start = j == 0 ? 0 : b.prefix_end[j - 1];
      for (std::size_t m = start; m < b.prefix_end[j]; ++m) {
        best[b.order[m]] = std::max(best[b.order[m]], suffix);
      }
    }
  }
  for (double& x : best) x = std::pow(x, 1.0 / p);
  return best;
}

struct HerzRieszRatios {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> t_grid;  // right end points of the cells of (M_p u)*
};

/// Extremes over t in (0, meas) of M_p u*(t) / (M_p u)*(t). On each cell of (M_p u)* the
/// denominator is constant and the numerator decreasing, so cell end points give exact extremes.
inline HerzRieszRatios herz_riesz_ratios(const MMS& s, const PointFn& u, double p) {
  check_point_fn(s, u, "herz_riesz_ratios");
  bool nonzero = false;
  for (double x : u) nonzero = nonzero || x != 0.0;
  if (!nonzero) throw Error(ErrorCode::ZeroFunction, "u vanishes identically");
  const GridFn ustar = decreasing_rearrangement({u, s.weights});
  const GridFn mstar = decreasing_rearrangement({maximal_metric(s, u, p), s.weights});
  HerzRieszRatios out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mstar.cells(); ++i) {
    const double D = mstar.values[i].value();
    const double lo = mstar.lo(i), hi = mstar.hi(i);
    const double at_lo = lo == 0.0 ? ustar(0.0).value() : maximal_decreasing(ustar, p, lo).value();
    const double at_hi = maximal_decreasing(ustar, p, hi).value();
    out.max_ratio = std::max(out.max_ratio, at_lo / D);
    out.min_ratio = std::min(out.min_ratio, at_hi / D);
    out.t_grid.push_back(hi);
  }
  return out;
}

/// P_a u*(t) = t^{-a} * integral over (0,t] of ustar(s) s^{a-1} ds.
inline ExtReal hardy(double a, const GridFn& ustar, double t) {
  require(a > 0.0 && a <= 1.0 && t > 0.0, "hardy: need a in (0,1] and t > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < ustar.cells() && ustar.lo(i) < t; ++i) {
    const double hi = std::min(t, ustar.hi(i));
    if (ustar.values[i].is_inf()) return ExtReal::infinity();
    acc += ustar.values[i].value() * (std::pow(hi, a) - std::pow(ustar.lo(i), a)) / a;
  }
  if (t > ustar.support_end() && ustar.tail > 0.0) {
    acc += ustar.tail * (std::pow(t, a) - std::pow(ustar.support_end(), a)) / a;
  }
  return ExtReal(acc * std::pow(t, -a));
}

/// E_s f(t) = f(s t): breakpoints scaled by 1/s.
inline GridFn dilation(const GridFn& f, double s) {
  require(s > 0.0 && std::isfinite(s), "dilation: s must be positive");
  GridFn g = f;
  for (double& b : g.breakpoints) b /= s;
  return g;
}

}  // namespace rikit
