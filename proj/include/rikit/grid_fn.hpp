#pragma once

#include <algorithm>
#include <vector>

#include "rikit/core.hpp"

namespace rikit {

/// Piecewise-constant nonnegative function on (0, inf).
/// Cell i is (breakpoints[i], breakpoints[i+1]] with value values[i];
/// tail applies on (breakpoints.back(), inf).
struct GridFn {
  std::vector<double> breakpoints{0.0};
  std::vector<ExtReal> values;
  double tail = 0.0;

  std::size_t cells() const { return values.size(); }
  double support_end() const { return breakpoints.back(); }
  double lo(std::size_t i) const { return breakpoints[i]; }
  double hi(std::size_t i) const { return breakpoints[i + 1]; }
  double width(std::size_t i) const { return breakpoints[i + 1] - breakpoints[i]; }

  void validate() const {
    require(!breakpoints.empty() && breakpoints.front() == 0.0,
            "GridFn: breakpoints must start at 0");
    require(breakpoints.size() == values.size() + 1,
            "GridFn: need one more breakpoint than values");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
      require(std::isfinite(breakpoints[i]) && breakpoints[i] > breakpoints[i - 1],
              "GridFn: breakpoints must be finite and strictly increasing");
    }
    for (const auto& v : values) require(v >= ExtReal(0.0), "GridFn: negative value");
    require(is_finite_nonneg(tail), "GridFn: tail must be finite and nonnegative");
  }

  bool is_decreasing() const {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i - 1] < values[i]) return false;
    }
    if (!values.empty() && values.back() < ExtReal(tail)) return false;
    return true;
  }

  /// Value at t > 0 (left-closed cells: the cell (t_{i-1}, t_i] containing t).
  /// For t <= 0 the first cell value is returned.
  ExtReal operator()(double t) const {
    if (values.empty()) return ExtReal(tail);
    if (t <= 0.0) return values.front();
    auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), t);
    if (it == breakpoints.end()) return ExtReal(tail);
    return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
  }
};

inline GridFn make_grid_fn(std::vector<double> breakpoints, std::vector<ExtReal> values,
                           double tail = 0.0) {
  GridFn f{std::move(breakpoints), std::move(values), tail};
  f.validate();
  return f;
}

/// c * indicator of (0, a].
inline GridFn indicator(double a, double c = 1.0) {
  require(a > 0.0 && std::isfinite(a), "indicator: a must be positive");
  return make_grid_fn({0.0, a}, {ExtReal(c)}, 0.0);
}

/// Integral of f^p over (0, t]; +inf marker if an infinite cell of positive length is hit
/// or if the tail is positive and t is infinite.
inline ExtReal integral_pow(const GridFn& f, double p, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    if (f.lo(i) >= t) return ExtReal(acc);
    const double len = std::min(t, f.hi(i)) - f.lo(i);
    if (f.values[i].is_inf()) return ExtReal::infinity();
    const double v = f.values[i].value();
    if (v > 0.0) acc += std::pow(v, p) * len;
  }
  if (t > f.support_end() && f.tail > 0.0) {
    if (std::isinf(t)) return ExtReal::infinity();
    acc += std::pow(f.tail, p) * (t - f.support_end());
  }
  return ExtReal(acc);
}

/// Merged and sorted breakpoints of a set of grids (duplicates removed).
inline std::vector<double> merge_breakpoints(const std::vector<const GridFn*>& fs) {
  std::vector<double> out;
  for (const auto* f : fs) out.insert(out.end(), f->breakpoints.begin(), f->breakpoints.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rikit
