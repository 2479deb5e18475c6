#pragma once

#include "gamma.hpp"
#include "graph.hpp"

#include <algorithm>
#include <vector>

namespace gamma_cone {

/// Graph on V ∪ {p}: the base graph plus an apex p = n joined to apex_set.
struct ConeGraph {
  Graph base;
  Vertex apex = 0;
  std::vector<Vertex> apex_set; // sorted, = S^1_p
  Graph graph;

  bool is_full() const { return apex_set.size() == base.vertex_count(); }
};

inline ConeGraph partial_cone(const Graph &g, std::vector<Vertex> apex_set) {
  for (Vertex v : apex_set)
    g.check_vertex(v);
  std::sort(apex_set.begin(), apex_set.end());
  apex_set.erase(std::unique(apex_set.begin(), apex_set.end()), apex_set.end());
  if (apex_set.empty())
    throw input_error("partial_cone: apex set must be nonempty");
  const Vertex apex = g.vertex_count();
  auto edges = g.edges();
  for (Vertex v : apex_set)
    edges.emplace_back(v, apex);
  Graph assembled(g.vertex_count() + 1, std::move(edges));
  return ConeGraph{g, apex, std::move(apex_set), std::move(assembled)};
}

inline ConeGraph full_cone(const Graph &g) {
  std::vector<Vertex> all(g.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v)
    all[v] = v;
  if (all.empty())
    throw input_error("full_cone: base graph is empty");
  return partial_cone(g, std::move(all));
}

/// Base function extended to the cone with f(p) = 0.
inline VertexFunction extend_to_cone(const ConeGraph &c, const VertexFunction &f) {
  f.require_size(c.base);
  auto values = std::vector<double>(f.values().begin(), f.values().end());
  values.push_back(0.0);
  return VertexFunction(std::move(values));
}

/// A function on the whole cone, shifted so the apex value is zero and
/// restricted to the base. The operators are shift invariant, so the closed
/// forms below applied to the result equal the operators on the input.
inline VertexFunction normalize_at_apex(const ConeGraph &c,
                                        const VertexFunction &on_cone) {
  on_cone.require_size(c.graph);
  const double at_apex = on_cone[c.apex];
  VertexFunction out(c.base.vertex_count());
  for (Vertex v = 0; v < out.size(); ++v)
    out[v] = on_cone[v] - at_apex;
  return out;
}

// Closed-form cone operators.
//
// All of them take a function on the base vertices and treat f(p) = 0. They
// are written purely in terms of base-graph operators, S^1_p (the apex set)
// and S^2_p (base vertices at distance two from the apex), and are checked
// against direct evaluation on ConeGraph::graph by the test suite.
//
// Two cases differ from the commonly quoted forms: at x ~ p, the degree in
// the ΔΓ1 and Γ2 expressions is the cone degree deg(x) + 1, and Γ2 carries
// an extra +½ f(x) Σ_{S^1_p} f term.

enum class ConeRegion { apex, first_sphere, second_sphere, far };

namespace detail {

struct ConeView {
  const ConeGraph &cone;
  std::vector<char> in_s1;

  explicit ConeView(const ConeGraph &c)
      : cone(c), in_s1(c.base.vertex_count(), 0) {
    for (Vertex v : c.apex_set)
      in_s1[v] = 1;
  }

  ConeRegion region(Vertex x) const {
    if (x == cone.apex)
      return ConeRegion::apex;
    cone.base.check_vertex(x);
    if (in_s1[x])
      return ConeRegion::first_sphere;
    for (Vertex y : cone.base.neighbors(x))
      if (in_s1[y])
        return ConeRegion::second_sphere;
    return ConeRegion::far;
  }

  double sum_s1(const VertexFunction &f) const {
    double s = 0.0;
    for (Vertex y : cone.apex_set)
      s += f[y];
    return s;
  }
  double sum_sq_s1(const VertexFunction &f) const {
    double s = 0.0;
    for (Vertex y : cone.apex_set)
      s += f[y] * f[y];
    return s;
  }
};

inline void check_cone_args(const ConeGraph &c, const VertexFunction &f,
                            Vertex x) {
  f.require_size(c.base);
  if (x > c.apex)
    throw input_error("invalid cone vertex id " + std::to_string(x));
}

} // namespace detail

inline ConeRegion cone_region(const ConeGraph &c, Vertex x) {
  if (x > c.apex)
    throw input_error("invalid cone vertex id " + std::to_string(x));
  return detail::ConeView(c).region(x);
}

/// Δ^c f(x).
inline double cone_laplacian(const ConeGraph &c, const VertexFunction &f,
                             Vertex x) {
  detail::check_cone_args(c, f, x);
  const detail::ConeView view(c);
  switch (view.region(x)) {
  case ConeRegion::apex:
    return view.sum_s1(f);
  case ConeRegion::first_sphere:
    return laplacian(c.base, f, x) - f[x];
  default:
    return laplacian(c.base, f, x);
  }
}

/// Γ1^c(f)(x).
inline double cone_gamma1(const ConeGraph &c, const VertexFunction &f, Vertex x) {
  detail::check_cone_args(c, f, x);
  const detail::ConeView view(c);
  switch (view.region(x)) {
  case ConeRegion::apex:
    return 0.5 * view.sum_sq_s1(f);
  case ConeRegion::first_sphere:
    return gamma1(c.base, f, x) + 0.5 * f[x] * f[x];
  default:
    return gamma1(c.base, f, x);
  }
}

/// Γ1^c(f, Δ^c f)(x).
inline double cone_gamma1_f_deltaf(const ConeGraph &c, const VertexFunction &f,
                                   Vertex x) {
  detail::check_cone_args(c, f, x);
  const detail::ConeView view(c);
  const Graph &g = c.base;
  auto lap = [&](Vertex y) { return laplacian(g, f, y); };
  auto val = [&](Vertex y) { return f[y]; };

  switch (view.region(x)) {
  case ConeRegion::apex: {
    double f_lap = 0.0;
    for (Vertex y : c.apex_set)
      f_lap += f[y] * lap(y);
    const double s = view.sum_s1(f);
    return 0.5 * f_lap - 0.5 * view.sum_sq_s1(f) - 0.5 * s * s;
  }
  case ConeRegion::first_sphere: {
    const double fx = f[x];
    double s1_sq = 0.0, s2_diff = 0.0;
    for (Vertex y : g.neighbors(x)) {
      if (view.in_s1[y])
        s1_sq += (f[y] - fx) * (f[y] - fx);
      else
        s2_diff += f[y] - fx;
    }
    return detail::gamma1_local(g, x, val, lap) - 0.5 * s1_sq +
           0.5 * fx * s2_diff - 0.5 * fx * view.sum_s1(f) +
           0.5 * fx * lap(x) - 0.5 * fx * fx;
  }
  case ConeRegion::second_sphere: {
    const double fx = f[x];
    double s = 0.0;
    for (Vertex y : g.neighbors(x))
      if (view.in_s1[y])
        s += f[y] * (f[y] - fx);
    return detail::gamma1_local(g, x, val, lap) - 0.5 * s;
  }
  case ConeRegion::far:
    break;
  }
  return detail::gamma1_local(g, x, val, lap);
}

/// Δ^c Γ1^c(f)(x).
inline double cone_delta_gamma1(const ConeGraph &c, const VertexFunction &f,
                                Vertex x) {
  detail::check_cone_args(c, f, x);
  const detail::ConeView view(c);
  const Graph &g = c.base;
  auto g1 = [&](Vertex y) { return gamma1(g, f, y); };
  auto delta_g1 = [&](Vertex y) {
    double s = 0.0;
    for (Vertex z : g.neighbors(y))
      s += g1(z) - g1(y);
    return s;
  };

  switch (view.region(x)) {
  case ConeRegion::apex: {
    double sum_g1 = 0.0;
    for (Vertex y : c.apex_set)
      sum_g1 += g1(y);
    const double k = static_cast<double>(c.apex_set.size());
    return sum_g1 - 0.5 * (k - 1.0) * view.sum_sq_s1(f);
  }
  case ConeRegion::first_sphere: {
    const double fx = f[x];
    double s1_nbr_sq = 0.0;
    for (Vertex y : g.neighbors(x))
      if (view.in_s1[y])
        s1_nbr_sq += f[y] * f[y];
    const double cone_degree = static_cast<double>(g.degree(x) + 1);
    return delta_g1(x) - g1(x) + 0.5 * (s1_nbr_sq + view.sum_sq_s1(f)) -
           0.5 * cone_degree * fx * fx;
  }
  case ConeRegion::second_sphere: {
    double s1_nbr_sq = 0.0;
    for (Vertex y : g.neighbors(x))
      if (view.in_s1[y])
        s1_nbr_sq += f[y] * f[y];
    return delta_g1(x) + 0.5 * s1_nbr_sq;
  }
  case ConeRegion::far:
    break;
  }
  return delta_g1(x);
}

/// Γ2^c(f)(x). Full cones use the two-case specialization; partial cones
/// the three-case form; vertices outside B^2_p fall through to base Γ2.
inline double cone_gamma2(const ConeGraph &c, const VertexFunction &f, Vertex x) {
  detail::check_cone_args(c, f, x);
  const detail::ConeView view(c);
  const Graph &g = c.base;
  const auto region = view.region(x);

  if (region == ConeRegion::apex) {
    double sum_g1 = 0.0;
    for (Vertex y : c.apex_set)
      sum_g1 += gamma1(g, f, y);
    const double s = view.sum_s1(f);
    const double sq = view.sum_sq_s1(f);
    const double k = static_cast<double>(c.apex_set.size());
    if (c.is_full())
      return sum_g1 - 0.25 * (k - 3.0) * sq + 0.5 * s * s;
    double f_lap = 0.0;
    for (Vertex y : c.apex_set)
      f_lap += f[y] * laplacian(g, f, y);
    return 0.5 * sum_g1 - 0.5 * f_lap - 0.25 * (k - 3.0) * sq + 0.5 * s * s;
  }

  const double base_g2 = gamma2(g, f, x);
  const double fx = f[x];
  switch (region) {
  case ConeRegion::first_sphere: {
    if (c.is_full())
      return base_g2 + gamma1(g, f, x) + 0.25 * view.sum_sq_s1(f) +
             0.25 * fx * fx + 0.5 * fx * view.sum_s1(f);
    double s1_diff_sq = 0.0, s1_sq = 0.0, s2_diff = 0.0;
    for (Vertex y : g.neighbors(x)) {
      if (view.in_s1[y]) {
        s1_diff_sq += (f[y] - fx) * (f[y] - fx);
        s1_sq += f[y] * f[y];
      } else {
        s2_diff += f[y] - fx;
      }
    }
    const double cone_degree = static_cast<double>(g.degree(x) + 1);
    return base_g2 - 0.5 * gamma1(g, f, x) + 0.5 * s1_diff_sq +
           0.25 * (s1_sq - cone_degree * fx * fx) - 0.5 * fx * laplacian(g, f, x) -
           0.5 * fx * s2_diff + 0.25 * view.sum_sq_s1(f) + 0.5 * fx * fx +
           0.5 * fx * view.sum_s1(f);
  }
  case ConeRegion::second_sphere: {
    double s1_sq = 0.0, s1_sum = 0.0;
    for (Vertex y : g.neighbors(x))
      if (view.in_s1[y]) {
        s1_sq += f[y] * f[y];
        s1_sum += f[y];
      }
    return base_g2 + 0.75 * s1_sq - 0.5 * fx * s1_sum;
  }
  default:
    return base_g2;
  }
}

/// All five closed forms at one vertex.
struct ConeOperatorValues {
  double laplacian = 0.0;
  double gamma1 = 0.0;
  double gamma1_f_deltaf = 0.0;
  double delta_gamma1 = 0.0;
  double gamma2 = 0.0;
};

inline ConeOperatorValues cone_closed_forms(const ConeGraph &c,
                                            const VertexFunction &f, Vertex x) {
  return {cone_laplacian(c, f, x), cone_gamma1(c, f, x),
          cone_gamma1_f_deltaf(c, f, x), cone_delta_gamma1(c, f, x),
          cone_gamma2(c, f, x)};
}

/// The same five quantities computed directly on the assembled cone graph.
inline ConeOperatorValues cone_direct(const ConeGraph &c, const VertexFunction &f,
                                      Vertex x) {
  const auto fc = extend_to_cone(c, f);
  const Graph &cg = c.graph;
  const auto lap = laplacian(cg, fc);
  VertexFunction g1(cg.vertex_count());
  for (Vertex y = 0; y < cg.vertex_count(); ++y)
    g1[y] = gamma1(cg, fc, y);
  return {lap[x], g1[x], gamma1(cg, fc, lap, x), laplacian(cg, g1, x),
          gamma2(cg, fc, x)};
}

/// Largest |closed form - direct| over the five operators.
inline double cone_oracle_discrepancy(const ConeGraph &c, const VertexFunction &f,
                                      Vertex x) {
  const auto a = cone_closed_forms(c, f, x);
  const auto b = cone_direct(c, f, x);
  return std::max({std::abs(a.laplacian - b.laplacian),
                   std::abs(a.gamma1 - b.gamma1),
                   std::abs(a.gamma1_f_deltaf - b.gamma1_f_deltaf),
                   std::abs(a.delta_gamma1 - b.delta_gamma1),
                   std::abs(a.gamma2 - b.gamma2)});
}

} // namespace gamma_cone
