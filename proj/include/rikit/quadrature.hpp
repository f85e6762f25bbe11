#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <functional>
#include <vector>

#include "rikit/core.hpp"

namespace rikit {

/// Partial values of a series of nonnegative increments and the classification made on them.
struct SeriesTrace {
  std::vector<double> partials;
  bool divergent = false;
  double ratio = 0.0;  // last observed increment ratio
};

struct SeriesResult {
  ExtReal value;
  SeriesTrace trace;
};

/// Classifies a stream of nonnegative increments d_0, d_1, ... produced on demand.
/// Convergent when increments die out relative to the sum, or decay at a stable geometric
/// ratio (the remaining tail is added in closed form). Divergent when the ratio of successive
/// increments stays at or above one, or the partial value leaves the double range.
template <class Next>
SeriesResult classify_series(Next&& next, std::size_t max_terms = 1000) {
  SeriesResult out;
  double sum = 0.0;
  std::vector<double> d;
  for (std::size_t k = 0; k < max_terms; ++k) {
    double inc = 0.0;
    if (!next(k, inc)) break;
    d.push_back(inc);
    sum += inc;
    out.trace.partials.push_back(sum);
    if (!std::isfinite(sum) || sum > 1e300) {
      out.trace.divergent = true;
      out.value = ExtReal::infinity();
      return out;
    }
    if (k < 8) continue;
    if (inc <= 1e-17 * sum) {
      out.value = ExtReal(sum);
      return out;
    }
    const std::size_t m = d.size();
    const double r1 = d[m - 1] / d[m - 2];
    const double r2 = d[m - 2] / d[m - 3];
    const double r3 = d[m - 3] / d[m - 4];
    out.trace.ratio = r1;
    if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(r3)) continue;
    const bool stable = std::fabs(r1 - r2) <= 1e-6 * r1 && std::fabs(r2 - r3) <= 1e-6 * r2;
    if (stable && r1 >= 1.0 - 1e-9) {
      out.trace.divergent = true;
      out.value = ExtReal::infinity();
      return out;
    }
    if (stable && r1 < 1.0 - 1e-9 && k >= 24) {
      const double tail = inc * r1 / (1.0 - r1);
      out.value = ExtReal(sum + tail);
      return out;
    }
    if (k >= 64 && r1 >= 1.0 && r2 >= 1.0 && r3 >= 1.0) {
      out.trace.divergent = true;
      out.value = ExtReal::infinity();
      return out;
    }
  }
  const double r = out.trace.ratio;
  // Raabe's statistic n (d_{n-1}/d_n - 1) tends to the decay exponent of power-like increments;
  // values near 1 or below mean the series behaves like the harmonic series.
  const double raabe = d.size() >= 2 && d.back() > 0.0
                           ? static_cast<double>(d.size()) * (d[d.size() - 2] / d.back() - 1.0)
                           : 2.0;
  if (!d.empty() && (r >= 0.999 || (r > 0.9 && raabe < 1.05))) {
    out.trace.divergent = true;
    out.value = ExtReal::infinity();
  } else {
    const double tail = (!d.empty() && r > 0.0 && r < 1.0) ? d.back() * r / (1.0 - r) : 0.0;
    out.value = ExtReal(sum + tail);
  }
  return out;
}

/// Integral over [a, b] with a > 0 of a smooth integrand (adaptive Gauss-Kronrod).
inline double integrate_regular(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 8, 1e-12);
}

/// Integral over (0, t1] of a nonnegative integrand that may be singular at 0, summed over
/// dyadic pieces [t1 2^{-k-1}, t1 2^{-k}] and classified by classify_series.
inline SeriesResult integrate_from_zero(const std::function<double(double)>& f, double t1) {
  require(t1 > 0.0, "integrate_from_zero: t1 must be positive");
  auto next = [&](std::size_t k, double& inc) {
    const double hi = std::ldexp(t1, -static_cast<int>(k));
    const double lo = hi * 0.5;
    if (!(lo > 1e-300)) return false;
    inc = boost::math::quadrature::gauss<double, 30>::integrate(f, lo, hi);
    if (inc < 0.0) inc = 0.0;
    return true;
  };
  return classify_series(next);
}

}  // namespace rikit
