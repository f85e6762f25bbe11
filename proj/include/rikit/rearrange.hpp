#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "rikit/grid_fn.hpp"

namespace rikit {

/// Function on a finite weighted index set. Values may be +-inf (IEEE infinities are
/// accepted here as input markers); NaN is rejected.
struct WeightedSamples {
  std::vector<double> values;
  std::vector<double> weights;

  void validate() const {
    require(values.size() == weights.size(), "WeightedSamples: length mismatch");
    for (double w : weights) {
      require(std::isfinite(w) && w > 0.0, "WeightedSamples: weights must be positive");
    }
    for (double v : values) require(!std::isnan(v), "WeightedSamples: NaN value");
  }
  double total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

inline constexpr double kMeasureTol = 1e-12;

/// mu_u(t) = sum of weights where |u| > t.
inline double distribution(const WeightedSamples& u, double t) {
  u.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (std::fabs(u.values[i]) > t) acc += u.weights[i];
  }
  return acc;
}

namespace detail {

/// Indices sorted by |value| descending, ties by ascending index.
inline std::vector<std::size_t> magnitude_order(const WeightedSamples& u) {
  std::vector<std::size_t> idx(u.values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(u.values[a]) > std::fabs(u.values[b]);
  });
  return idx;
}

}  // namespace detail

/// u*(t) = inf{s >= 0 : mu_u(s) <= t} as a decreasing GridFn with zero tail.
inline GridFn decreasing_rearrangement(const WeightedSamples& u) {
  u.validate();
  const auto order = detail::magnitude_order(u);
  GridFn f;
  double acc = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double mag = std::fabs(u.values[order[k]]);
    if (mag == 0.0) break;
    while (k < order.size() && std::fabs(u.values[order[k]]) == mag) {
      acc += u.weights[order[k]];
      ++k;
    }
    f.breakpoints.push_back(acc);
    f.values.push_back(std::isinf(mag) ? ExtReal::infinity() : ExtReal(mag));
  }
  return f;
}

/// f**(t) = (1/t) * integral of f* over (0, t].
inline ExtReal star_star(const GridFn& ustar, double t) {
  require(t > 0.0, "star_star: t must be positive");
  const ExtReal integral = integral_pow(ustar, 1.0, t);
  if (integral.is_inf()) return integral;
  return ExtReal(integral.value() / t);
}

struct SuperlevelSet {
  std::vector<std::size_t> indices;
  double target_measure = 0.0;
  double level = 0.0;  // may be +inf when the cut sits inside an infinite cell
};

/// Raised when no admissible set reaches the requested measure exactly.
class NotAttainable : public Error {
 public:
  NotAttainable(double t, double below, double above)
      : Error(ErrorCode::NotAttainable,
              "measure " + std::to_string(t) + " not attainable; nearest " +
                  std::to_string(below) + " and " + std::to_string(above)),
        below_(below),
        above_(above) {}
  double below() const { return below_; }
  double above() const { return above_; }

 private:
  double below_, above_;
};

namespace detail {

inline constexpr std::size_t kMaxTieEnumeration = 20;

inline bool tie_subset_rec(const std::vector<double>& w, const std::vector<double>& suffix,
                           std::size_t i, double sum, double target, std::vector<bool>& pick) {
  if (std::fabs(sum - target) <= kMeasureTol) return true;
  if (i == w.size() || sum > target + kMeasureTol || sum + suffix[i] < target - kMeasureTol) {
    return false;
  }
  pick[i] = true;
  if (tie_subset_rec(w, suffix, i + 1, sum + w[i], target, pick)) return true;
  pick[i] = false;
  return tie_subset_rec(w, suffix, i + 1, sum, target, pick);
}

/// Lexicographically smallest (by index) subset of `w` summing to `target` within tolerance.
/// Include-before-exclude depth-first search makes the first hit the smallest.
inline bool tie_subset(const std::vector<double>& w, double target, std::vector<bool>& pick) {
  std::vector<double> suffix(w.size() + 1, 0.0);
  for (std::size_t i = w.size(); i-- > 0;) suffix[i] = suffix[i + 1] + w[i];
  pick.assign(w.size(), false);
  return tie_subset_rec(w, suffix, 0, 0.0, target, pick);
}

}  // namespace detail

/// One canonical member A of the family {|u| > L} subset A subset {|u| >= L}, nu(A) = t,
/// where L is the value of the rearrangement cell containing t. Ties are filled in ascending
/// index order; when that prefix misses t, the lexicographically smallest tie subset is used.
inline SuperlevelSet superlevel_family(const WeightedSamples& u, double t) {
  u.validate();
  const double total = u.total_weight();
  require(t >= 0.0 && t <= total + kMeasureTol, "superlevel_family: t outside [0, total]");
  const GridFn ustar = decreasing_rearrangement(u);
  SuperlevelSet out;
  out.target_measure = t;
  const ExtReal lvl = ustar(t);
  out.level = lvl.to_double();
  if (t == 0.0) return out;

  const auto order = detail::magnitude_order(u);
  std::vector<std::size_t> ties;
  double strict = 0.0;
  for (std::size_t i : order) {
    const double m = std::fabs(u.values[i]);
    if (m > out.level) {
      out.indices.push_back(i);
      strict += u.weights[i];
    } else if (m == out.level) {
      ties.push_back(i);
    }
  }
  std::sort(ties.begin(), ties.end());
  const double need = t - strict;

  // Prefix fill (lowest index first).
  double acc = 0.0;
  std::vector<double> prefix_sums{0.0};
  for (std::size_t k = 0; k < ties.size(); ++k) {
    if (std::fabs(acc - need) <= kMeasureTol) break;
    acc += u.weights[ties[k]];
    prefix_sums.push_back(acc);
    out.indices.push_back(ties[k]);
  }
  if (std::fabs(acc - need) <= kMeasureTol) {
    std::sort(out.indices.begin(), out.indices.end());
    return out;
  }
  out.indices.resize(out.indices.size() - (prefix_sums.size() - 1));

  std::vector<double> tw;
  for (std::size_t i : ties) tw.push_back(u.weights[i]);
  std::vector<double> reachable;
  if (ties.size() <= detail::kMaxTieEnumeration) {
    std::vector<bool> pick;
    if (detail::tie_subset(tw, need, pick)) {
      for (std::size_t k = 0; k < ties.size(); ++k) {
        if (pick[k]) out.indices.push_back(ties[k]);
      }
      std::sort(out.indices.begin(), out.indices.end());
      return out;
    }
    const std::size_t m = ties.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask & (std::size_t{1} << k)) s += tw[k];
      }
      reachable.push_back(s);
    }
  } else {
    for (std::size_t k = 0; k < ties.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += tw[j];
      reachable.push_back(s);
    }
    reachable.push_back(0.0);
  }
  double below = strict, above = strict + std::accumulate(tw.begin(), tw.end(), 0.0);
  for (double s : reachable) {
    if (s <= need && strict + s > below) below = strict + s;
    if (s >= need && strict + s < above) above = strict + s;
  }
  throw NotAttainable(t, below, above);
}

}  // namespace rikit
