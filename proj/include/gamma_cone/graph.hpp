#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gamma_cone {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Base of every error the library throws for bad input, so callers can
// separate input problems from numerical failures.
class input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class disconnected_graph_error : public input_error {
public:
  using input_error::input_error;
};

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Immutable after construction. Edges are stored with u < v in sorted
/// order; the adjacency lists are sorted as well, so two graphs with the
/// same edge set compare equal regardless of how they were built.
class Graph {
public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges)
      : adjacency_(vertex_count) {
    for (auto &[u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count)
        throw input_error("edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ") references a vertex >= " +
                          std::to_string(vertex_count));
      if (u == v)
        throw input_error("loop edge at vertex " + std::to_string(u));
      if (u > v)
        std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto &[u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto &nbrs : adjacency_)
      std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge> &edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[v];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto &nbrs : adjacency_)
      d = std::max(d, nbrs.size());
    return d;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  bool is_complete() const {
    const auto n = vertex_count();
    return edge_count() == n * (n - (n > 0 ? 1 : 0)) / 2;
  }

  void check_vertex(Vertex v) const {
    if (v >= adjacency_.size())
      throw input_error("invalid vertex id " + std::to_string(v) +
                        " (graph has " + std::to_string(adjacency_.size()) +
                        " vertices)");
  }

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// Real-valued function on the vertex set, indexed by vertex id.
class VertexFunction {
public:
  VertexFunction() = default;
  explicit VertexFunction(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit VertexFunction(std::vector<double> values)
      : values_(std::move(values)) {}
  VertexFunction(std::initializer_list<double> values) : values_(values) {}

  /// Indicator of a single vertex.
  static VertexFunction delta(std::size_t n, Vertex v) {
    VertexFunction f(n);
    f.values_.at(v) = 1.0;
    return f;
  }

  std::size_t size() const { return values_.size(); }
  double operator[](Vertex v) const { return values_[v]; }
  double &operator[](Vertex v) { return values_[v]; }
  std::span<const double> values() const { return values_; }
  std::vector<double> &raw() { return values_; }

  double sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
  }
  double sum_of_squares() const {
    double s = 0.0;
    for (double v : values_)
      s += v * v;
    return s;
  }
  double average() const {
    return values_.empty() ? 0.0 : sum() / static_cast<double>(values_.size());
  }

  /// f - avg(f).
  VertexFunction centered() const {
    VertexFunction out(*this);
    const double a = average();
    for (double &v : out.values_)
      v -= a;
    return out;
  }

  VertexFunction scaled(double a) const {
    VertexFunction out(*this);
    for (double &v : out.values_)
      v *= a;
    return out;
  }

  VertexFunction shifted(double c) const {
    VertexFunction out(*this);
    for (double &v : out.values_)
      v += c;
    return out;
  }

  void require_size(const Graph &g) const {
    if (values_.size() != g.vertex_count())
      throw input_error("function has " + std::to_string(values_.size()) +
                        " values but the graph has " +
                        std::to_string(g.vertex_count()) + " vertices");
  }

  friend bool operator==(const VertexFunction &, const VertexFunction &) = default;

private:
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Generators

inline Graph make_complete(std::size_t n) {
  if (n == 0)
    throw input_error("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline Graph make_cycle(std::size_t n) {
  if (n < 3)
    throw input_error("cycle needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

inline Graph make_path(std::size_t n) {
  if (n < 2)
    throw input_error("path needs n >= 2, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v)
    edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

inline Graph make_hypercube(std::size_t d) {
  if (d < 1)
    throw input_error("hypercube needs dimension >= 1");
  if (d > 16)
    throw input_error("hypercube dimension " + std::to_string(d) +
                      " is too large");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t bit = 0; bit < d; ++bit) {
      const Vertex w = v ^ (std::size_t{1} << bit);
      if (v < w)
        edges.emplace_back(v, w);
    }
  return Graph(n, std::move(edges));
}

/// Complete graph on the same vertex set.
inline Graph completion(const Graph &g) {
  if (g.vertex_count() == 0)
    return g;
  return make_complete(g.vertex_count());
}

// ---------------------------------------------------------------------------
// Metric queries

/// BFS distances from `center`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> distances_from(const Graph &g, Vertex center) {
  g.check_vertex(center);
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.vertex_count(), unreached);
  std::queue<Vertex> frontier;
  dist[center] = 0;
  frontier.push(center);
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(u))
      if (dist[w] == unreached) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
  }
  return dist;
}

inline std::vector<Vertex> sphere(const Graph &g, Vertex center,
                                  std::size_t radius) {
  const auto dist = distances_from(g, center);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < dist.size(); ++v)
    if (dist[v] == radius)
      out.push_back(v);
  return out;
}

inline std::vector<Vertex> ball(const Graph &g, Vertex center,
                                std::size_t radius) {
  const auto dist = distances_from(g, center);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < dist.size(); ++v)
    if (dist[v] <= radius)
      out.push_back(v);
  return out;
}

/// Connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<Vertex>> connected_components(const Graph &g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s])
      continue;
    std::vector<Vertex> comp;
    std::vector<Vertex> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph &g) {
  return connected_components(g).size() <= 1;
}

/// Throws disconnected_graph_error listing the components.
inline void require_connected(const Graph &g, const std::string &what) {
  if (g.vertex_count() == 0)
    throw input_error(what + ": empty graph");
  const auto comps = connected_components(g);
  if (comps.size() <= 1)
    return;
  std::string msg = what + ": graph is disconnected; components:";
  for (const auto &c : comps) {
    msg += " {";
    for (std::size_t i = 0; i < c.size(); ++i)
      msg += (i ? "," : "") + std::to_string(c[i]);
    msg += "}";
  }
  throw disconnected_graph_error(msg);
}

} // namespace gamma_cone
