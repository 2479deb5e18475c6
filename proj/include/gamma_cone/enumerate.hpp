#pragma once

#include "graph.hpp"
#include "graph_io.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gamma_cone {

// Exhaustive enumeration of small connected graphs up to isomorphism.
//
// Canonical labelling is a plain individualization-refinement search: refine
// the ordered partition to an equitable one, branch on every vertex of the
// first non-singleton cell, and keep the relabelling whose upper-triangle
// bit string is largest. The only pruning is for twins (same neighbours
// apart from each other): swapping two twins in one cell is an automorphism
// that fixes the partition, so one branch per twin class suffices.

namespace detail {

using AdjMask = std::vector<std::uint32_t>;
using Partition = std::vector<std::vector<int>>;

inline void refine(const AdjMask &adj, Partition &cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      std::uint32_t splitter = 0;
      for (int v : cells[s])
        splitter |= 1u << v;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() < 2)
          continue;
        std::map<int, std::vector<int>> by_count;
        for (int v : cells[c])
          by_count[__builtin_popcount(adj[v] & splitter)].push_back(v);
        if (by_count.size() < 2)
          continue;
        Partition pieces;
        for (auto &[count, members] : by_count)
          pieces.push_back(std::move(members));
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c),
                     pieces.begin(), pieces.end());
        changed = true;
        break;
      }
    }
  }
}

inline std::uint64_t relabelled_code(const AdjMask &adj, const Partition &cells) {
  const std::size_t n = cells.size();
  std::uint64_t code = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      code <<= 1;
      if (adj[cells[i][0]] & (1u << cells[j][0]))
        code |= 1;
    }
  return code;
}

inline void search(const AdjMask &adj, Partition cells, std::uint64_t &best,
                   std::vector<int> &best_order, bool &found) {
  refine(adj, cells);
  auto target = std::find_if(cells.begin(), cells.end(),
                             [](const auto &c) { return c.size() > 1; });
  if (target == cells.end()) {
    const auto code = relabelled_code(adj, cells);
    if (!found || code > best) {
      best = code;
      found = true;
      best_order.clear();
      for (const auto &c : cells)
        best_order.push_back(c[0]);
    }
    return;
  }
  const auto idx = static_cast<std::size_t>(target - cells.begin());
  auto twins = [&](int a, int b) {
    return (adj[a] & ~(1u << b)) == (adj[b] & ~(1u << a));
  };
  std::vector<int> tried;
  for (int v : cells[idx]) {
    if (std::any_of(tried.begin(), tried.end(), [&](int w) { return twins(v, w); }))
      continue;
    tried.push_back(v);
    Partition next = cells;
    std::vector<int> rest;
    for (int w : cells[idx])
      if (w != v)
        rest.push_back(w);
    next[idx] = {v};
    next.insert(next.begin() + static_cast<std::ptrdiff_t>(idx) + 1, rest);
    search(adj, std::move(next), best, best_order, found);
  }
}

inline AdjMask to_mask(const Graph &g) {
  AdjMask adj(g.vertex_count(), 0);
  for (const auto &[u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

} // namespace detail

inline constexpr std::size_t canonical_max_vertices = 11;

/// Relabelled copy of `g` that is identical for all isomorphic inputs.
inline Graph canonical_form(const Graph &g) {
  const std::size_t n = g.vertex_count();
  if (n > canonical_max_vertices)
    throw input_error("canonical_form supports at most 11 vertices");
  if (n == 0)
    return g;
  const auto adj = detail::to_mask(g);
  detail::Partition unit(1);
  for (std::size_t v = 0; v < n; ++v)
    unit[0].push_back(static_cast<int>(v));
  std::uint64_t best = 0;
  std::vector<int> order;
  bool found = false;
  detail::search(adj, unit, best, order, found);

  std::vector<Vertex> new_label(n);
  for (std::size_t i = 0; i < n; ++i)
    new_label[static_cast<std::size_t>(order[i])] = i;
  std::vector<Edge> edges;
  for (const auto &[u, v] : g.edges())
    edges.emplace_back(new_label[u], new_label[v]);
  return Graph(n, std::move(edges));
}

inline bool isomorphic(const Graph &a, const Graph &b) {
  return a.vertex_count() == b.vertex_count() &&
         a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b);
}

inline constexpr std::size_t enumeration_max_vertices = 9;

namespace detail {

// Every connected graph has a non-cut vertex, so each class on m vertices
// arises from a connected graph on m-1 vertices plus one new vertex.
inline std::vector<Graph> extend_level(const std::vector<Graph> &level, std::size_t m) {
  std::map<std::string, Graph> seen;
  for (const auto &base : level) {
    const Vertex added = m - 1;
    for (std::uint32_t subset = 1; subset < (1u << (m - 1)); ++subset) {
      std::vector<Edge> edges = base.edges();
      for (Vertex v = 0; v < m - 1; ++v)
        if (subset & (1u << v))
          edges.emplace_back(v, added);
      auto canon = canonical_form(Graph(m, std::move(edges)));
      auto key = encode_graph6(canon);
      seen.try_emplace(std::move(key), std::move(canon));
    }
  }
  std::vector<Graph> next;
  next.reserve(seen.size());
  for (auto &[key, graph] : seen)
    next.push_back(std::move(graph));
  return next;
}

inline void check_enumeration_size(std::size_t n) {
  if (n == 0)
    throw input_error("connected_graphs needs n >= 1");
  if (n > enumeration_max_vertices)
    throw input_error("exhaustive enumeration is capped at n = 9");
}

} // namespace detail

/// All connected graphs on exactly `n` vertices, one per isomorphism class,
/// in canonical labelling, sorted by graph6 string.
inline std::vector<Graph> connected_graphs(std::size_t n) {
  detail::check_enumeration_size(n);
  std::vector<Graph> level{Graph(1, {})};
  for (std::size_t m = 2; m <= n; ++m)
    level = detail::extend_level(level, m);
  return level;
}

/// Connected graphs on min_n..max_n vertices, grouped by vertex count.
inline std::vector<Graph> connected_graphs_up_to(std::size_t max_n, std::size_t min_n = 1) {
  detail::check_enumeration_size(max_n);
  std::vector<Graph> out;
  std::vector<Graph> level{Graph(1, {})};
  for (std::size_t m = 1; m <= max_n; ++m) {
    if (m > 1)
      level = detail::extend_level(level, m);
    if (m >= min_n)
      out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

} // namespace gamma_cone
