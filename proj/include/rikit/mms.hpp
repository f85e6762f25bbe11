#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "rikit/core.hpp"

namespace rikit {

/// Values indexed by the points of a metric measure space.
using PointFn = std::vector<double>;

/// Finite metric measure space: distance matrix (row-major) and positive point weights.
struct MMS {
  std::size_t n = 0;
  std::vector<double> dist;
  std::vector<double> weights;

  double d(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
  double total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

  static MMS from_matrix(const std::vector<std::vector<double>>& m, std::vector<double> w) {
    MMS s;
    s.n = m.size();
    for (const auto& row : m) {
      require(row.size() == s.n, "MMS: distance matrix must be square");
      s.dist.insert(s.dist.end(), row.begin(), row.end());
    }
    s.weights = std::move(w);
    s.validate();
    return s;
  }

  void validate() const {
    require(n > 0, "MMS: empty space");
    require(dist.size() == n * n && weights.size() == n, "MMS: size mismatch");
    for (double w : weights) require(std::isfinite(w) && w > 0.0, "MMS: weights must be positive");
    for (std::size_t i = 0; i < n; ++i) {
      require(d(i, i) == 0.0, "MMS: nonzero diagonal");
      for (std::size_t j = i + 1; j < n; ++j) {
        require(std::isfinite(d(i, j)) && d(i, j) > 0.0, "MMS: off-diagonal distances must be positive");
        require(d(i, j) == d(j, i), "MMS: distance matrix not symmetric");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          require(d(i, k) <= d(i, j) + d(j, k) + 1e-12, "MMS: triangle inequality violated");
        }
      }
    }
  }
};

inline void check_point_fn(const MMS& s, const PointFn& u, const char* what) {
  require(u.size() == s.n, std::string(what) + ": length does not match the space");
  for (double x : u) require(!std::isnan(x), std::string(what) + ": NaN value");
}

/// Space plus the edge set it was generated from (used by curve-family generators).
struct Graph {
  MMS space;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<double> edge_length;
};

/// Shortest-path metric of a connected graph with positive edge lengths.
inline Graph graph_from_edges(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges,
                              std::vector<double> lengths, std::vector<double> weights) {
  require(edges.size() == lengths.size(), "graph: one length per edge");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    require(a < n && b < n && a != b && lengths[e] > 0.0, "graph: bad edge");
    adj[a].push_back({b, lengths[e]});
    adj[b].push_back({a, lengths[e]});
  }
  Graph g;
  g.space.n = n;
  g.space.dist.assign(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> dd(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dd[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      const auto [dv, v] = pq.top();
      pq.pop();
      if (dv > dd[v]) continue;
      for (const auto& [w, len] : adj[v]) {
        if (dv + len < dd[w]) {
          dd[w] = dv + len;
          pq.push({dd[w], w});
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      require(std::isfinite(dd[t]), "graph: not connected");
      g.space.dist[s * n + t] = dd[t];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(g.space.dist[i * n + j], g.space.dist[j * n + i]);
      g.space.dist[i * n + j] = g.space.dist[j * n + i] = m;
    }
  }
  g.space.weights = std::move(weights);
  g.edges = std::move(edges);
  g.edge_length = std::move(lengths);
  g.space.validate();
  return g;
}

inline Graph path_graph(std::size_t n) {
  require(n >= 1, "path: need at least one point");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return graph_from_edges(n, e, std::vector<double>(e.size(), 1.0), std::vector<double>(n, 1.0));
}

inline Graph grid_graph(std::size_t m, std::size_t k) {
  require(m >= 1 && k >= 1, "grid: need positive dimensions");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t v = i * k + j;
      if (j + 1 < k) e.push_back({v, v + 1});
      if (i + 1 < m) e.push_back({v, v + k});
    }
  }
  return graph_from_edges(m * k, e, std::vector<double>(e.size(), 1.0),
                          std::vector<double>(m * k, 1.0));
}

/// Complete b-ary tree of the given depth (depth 0 is a single root).
inline Graph tree_graph(std::size_t b, std::size_t depth) {
  require(b >= 1, "tree: branching must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  std::size_t n = 1, level_start = 0, level_size = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    for (std::size_t k = 0; k < level_size; ++k) {
      for (std::size_t c = 0; c < b; ++c) e.push_back({level_start + k, n++});
    }
    level_start += level_size;
    level_size *= b;
  }
  return graph_from_edges(n, e, std::vector<double>(e.size(), 1.0), std::vector<double>(n, 1.0));
}

/// Distinct open balls around one center: point order by distance (ties by index), the prefix
/// length of each ball, the realized farthest distance, and the generating radius (midpoint to
/// the next distance level; 1.5 times the farthest distance for the whole space).
struct CenterBalls {
  std::size_t center = 0;
  std::vector<std::size_t> order;
  std::vector<std::size_t> prefix_end;
  std::vector<double> level_dist;
  std::vector<double> radius;
};

inline CenterBalls balls_at(const MMS& s, std::size_t c) {
  CenterBalls b;
  b.center = c;
  b.order.resize(s.n);
  std::iota(b.order.begin(), b.order.end(), std::size_t{0});
  std::stable_sort(b.order.begin(), b.order.end(),
                   [&](std::size_t x, std::size_t y) { return s.d(c, x) < s.d(c, y); });
  std::size_t k = 0;
  while (k < s.n) {
    const double dk = s.d(c, b.order[k]);
    while (k < s.n && s.d(c, b.order[k]) == dk) ++k;
    b.prefix_end.push_back(k);
    b.level_dist.push_back(dk);
  }
  for (std::size_t j = 0; j < b.level_dist.size(); ++j) {
    if (j + 1 < b.level_dist.size()) {
      b.radius.push_back(0.5 * (b.level_dist[j] + b.level_dist[j + 1]));
    } else {
      b.radius.push_back(b.level_dist[j] > 0.0 ? 1.5 * b.level_dist[j] : 1.0);
    }
  }
  return b;
}

}  // namespace rikit
