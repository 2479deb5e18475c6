#pragma once

#include "graph.hpp"

#include <cstdint>
#include <vector>

namespace gamma_cone {

/// xorshift64* generator seeded through one splitmix64 step.
///
/// Spelled out here (rather than using <random> distributions) so randomized
/// corpora are identical across standard libraries:
///
///   seed:    s = splitmix64(seed); if s == 0 then s = 0x9E3779B97F4A7C15
///   next():  s ^= s >> 12; s ^= s << 25; s ^= s >> 27;
///            return s * 0x2545F4914F6CDD1D
///   uniform01(): (next() >> 11) * 2^-53
///   below(k):    next() % k
class Xorshift64Star {
public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0)
      state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t below(std::size_t k) { return static_cast<std::size_t>(next() % k); }
  bool chance(double p) { return uniform01() < p; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

private:
  std::uint64_t state_;
};

/// Random spanning tree on a shuffled vertex order plus each remaining pair
/// independently with probability `extra_edge_probability`. Always connected.
inline Graph random_connected_graph(Xorshift64Star &rng, std::size_t n,
                                    double extra_edge_probability) {
  if (n == 0)
    throw input_error("random graph needs at least one vertex");
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v)
    order[v] = v;
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    const Vertex u = order[i];
    const Vertex w = order[rng.below(i)];
    present[u][w] = present[w][u] = true;
    edges.emplace_back(u, w);
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!present[u][v] && rng.chance(extra_edge_probability))
        edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline VertexFunction random_function(Xorshift64Star &rng, std::size_t n,
                                      double lo = -1.0, double hi = 1.0) {
  VertexFunction f(n);
  for (Vertex v = 0; v < n; ++v)
    f[v] = rng.uniform(lo, hi);
  return f;
}

} // namespace gamma_cone
