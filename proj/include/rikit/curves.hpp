#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rikit/mms.hpp"

namespace rikit {

struct Curve {
  std::vector<std::size_t> vertices;

  double length(const MMS& s) const {
    double L = 0.0;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) L += s.d(vertices[k], vertices[k + 1]);
    return L;
  }
  std::size_t front() const { return vertices.front(); }
  std::size_t back() const { return vertices.back(); }
};

inline void validate_curve(const MMS& s, const Curve& c) {
  require(c.vertices.size() >= 2, "curve: needs at least two vertices");
  for (std::size_t k = 0; k < c.vertices.size(); ++k) {
    require(c.vertices[k] < s.n, "curve: vertex index out of range");
    if (k > 0) require(c.vertices[k] != c.vertices[k - 1], "curve: repeated consecutive vertex");
  }
}

struct CurveFamily {
  std::vector<Curve> curves;
  std::string generator = "explicit";

  bool empty() const { return curves.empty(); }
  std::size_t size() const { return curves.size(); }
  void validate(const MMS& s) const {
    for (const auto& c : curves) validate_curve(s, c);
  }
};

/// Trapezoid weights: the line integral of g along c equals sum over (vertex, weight) of w g(v).
/// Repeated vertices are merged.
inline std::vector<std::pair<std::size_t, double>> trapezoid_weights(const MMS& s, const Curve& c) {
  std::vector<std::pair<std::size_t, double>> w;
  auto add = [&](std::size_t v, double x) {
    for (auto& e : w) {
      if (e.first == v) {
        e.second += x;
        return;
      }
    }
    w.push_back({v, x});
  };
  for (std::size_t k = 0; k + 1 < c.vertices.size(); ++k) {
    const double half = 0.5 * s.d(c.vertices[k], c.vertices[k + 1]);
    add(c.vertices[k], half);
    add(c.vertices[k + 1], half);
  }
  return w;
}

/// Trapezoid rule along the curve; +inf values on the curve give the +inf marker.
inline ExtReal line_integral(const MMS& s, const PointFn& g, const Curve& c) {
  validate_curve(s, c);
  require(g.size() == s.n, "line_integral: g has wrong length");
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < c.vertices.size(); ++k) {
    const std::size_t a = c.vertices[k], b = c.vertices[k + 1];
    require(g[a] >= 0.0 && g[b] >= 0.0, "line_integral: g must be nonnegative");
    if (std::isinf(g[a]) || std::isinf(g[b])) return ExtReal::infinity();
    acc += s.d(a, b) * 0.5 * (g[a] + g[b]);
  }
  return ExtReal(acc);
}

/// |u(a) - u(b)| with the convention that infinite values of either sign give +inf.
inline ExtReal endpoint_gap(const PointFn& u, std::size_t a, std::size_t b) {
  if (std::isinf(u[a]) || std::isinf(u[b])) return ExtReal::infinity();
  return ExtReal(std::fabs(u[a] - u[b]));
}

struct UpperGradientVerdict {
  bool ok = true;
  std::size_t worst = 0;   // curve index with the largest violation (or smallest slack)
  double violation = 0.0;  // |du| - integral of g on the worst curve (<= 0 when ok)
};

inline UpperGradientVerdict is_upper_gradient(const MMS& s, const PointFn& u, const PointFn& g,
                                              const CurveFamily& gamma) {
  check_point_fn(s, u, "is_upper_gradient");
  check_point_fn(s, g, "is_upper_gradient");
  UpperGradientVerdict v;
  v.violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const Curve& c = gamma.curves[k];
    const ExtReal lhs = endpoint_gap(u, c.front(), c.back());
    const ExtReal rhs = line_integral(s, g, c);
    double gap;
    if (rhs.is_inf()) {
      gap = -std::numeric_limits<double>::infinity();
    } else if (lhs.is_inf()) {
      gap = std::numeric_limits<double>::infinity();
    } else {
      gap = lhs.value() - rhs.value();
    }
    if (gap > v.violation) {
      v.violation = gap;
      v.worst = k;
    }
  }
  v.ok = gamma.empty() || v.violation <= 0.0;
  if (gamma.empty()) v.violation = 0.0;
  return v;
}

// ---- generators -------------------------------------------------------------------------

inline std::vector<std::vector<std::size_t>> adjacency(const Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.space.n);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

/// One shortest edge path per unordered pair; ties broken towards lower-index predecessors.
inline CurveFamily shortest_path_family(const Graph& g) {
  const MMS& s = g.space;
  const auto adj = adjacency(g);
  CurveFamily f;
  f.generator = "all-pairs shortest paths";
  for (std::size_t a = 0; a < s.n; ++a) {
    for (std::size_t b = a + 1; b < s.n; ++b) {
      Curve c;
      std::size_t v = b;
      c.vertices.push_back(v);
      while (v != a) {
        std::size_t next = s.n;
        for (std::size_t w : adj[v]) {
          double len = s.d(v, w);
          for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto [x, y] = g.edges[e];
            if ((x == v && y == w) || (x == w && y == v)) len = std::min(len, g.edge_length[e]);
          }
          if (std::fabs(s.d(a, w) + len - s.d(a, v)) <= 1e-12 * (1.0 + s.d(a, v))) {
            next = w;
            break;
          }
        }
        require(next < s.n, "shortest_path_family: predecessor not found");
        v = next;
        c.vertices.push_back(v);
      }
      std::reverse(c.vertices.begin(), c.vertices.end());
      f.curves.push_back(std::move(c));
    }
  }
  return f;
}

/// All simple edge paths with 1..k edges, one orientation each (first vertex < last vertex).
inline CurveFamily k_hop_family(const Graph& g, std::size_t k) {
  require(k >= 1, "k_hop_family: k must be >= 1");
  const auto adj = adjacency(g);
  CurveFamily f;
  f.generator = "k-hop paths (k = " + std::to_string(k) + ")";
  std::vector<std::size_t> path;
  std::vector<bool> used(g.space.n, false);
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (path.size() >= 2 && path.front() < path.back()) f.curves.push_back({path});
    if (path.size() == k + 1) return;
    for (std::size_t w : adj[v]) {
      if (used[w]) continue;
      used[w] = true;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      used[w] = false;
    }
  };
  for (std::size_t v = 0; v < g.space.n; ++v) {
    used[v] = true;
    path = {v};
    dfs(v);
    used[v] = false;
  }
  return f;
}

inline CurveFamily edge_family(const Graph& g) {
  CurveFamily f;
  f.generator = "edges";
  for (const auto& [a, b] : g.edges) f.curves.push_back({{std::min(a, b), std::max(a, b)}});
  return f;
}

/// Two-vertex curves for every unordered pair of points.
inline CurveFamily pair_family(const MMS& s) {
  CurveFamily f;
  f.generator = "pairs";
  for (std::size_t a = 0; a < s.n; ++a) {
    for (std::size_t b = a + 1; b < s.n; ++b) f.curves.push_back({{a, b}});
  }
  return f;
}

/// All contiguous subpaths with at least two vertices of every curve, deduplicated.
inline CurveFamily subpath_closure(const CurveFamily& base) {
  std::set<std::vector<std::size_t>> seen;
  CurveFamily f;
  f.generator = base.generator + " + subpaths";
  for (const auto& c : base.curves) {
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        std::vector<std::size_t> sub(v.begin() + i, v.begin() + j + 1);
        if (seen.insert(sub).second) f.curves.push_back({sub});
      }
    }
  }
  return f;
}

/// True when every contiguous subpath (either orientation) of every curve is in the family.
inline bool closed_under_subcurves(const CurveFamily& f) {
  std::set<std::vector<std::size_t>> have;
  for (const auto& c : f.curves) {
    have.insert(c.vertices);
    have.insert({c.vertices.rbegin(), c.vertices.rend()});
  }
  for (const auto& c : f.curves) {
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (!have.count(std::vector<std::size_t>(v.begin() + i, v.begin() + j + 1))) return false;
      }
    }
  }
  return true;
}

}  // namespace rikit
