#pragma once

#include "graph.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace gamma_cone {

// Bakry-Emery operators for the unnormalized graph Laplacian
//
//   Δf(x)        = Σ_{y~x} (f(y) - f(x))
//   Γ1(f,h)(x)   = ½ Σ_{y~x} (f(y) - f(x)) (h(y) - h(x))
//   Γ2(f,h)(x)   = ½ [ΔΓ1(f,h)(x) - Γ1(Δf,h)(x) - Γ1(f,Δh)(x)]
//
// Everything is evaluated locally: Γ2 at x reads only ball(x, 2).

inline double laplacian(const Graph &g, const VertexFunction &f, Vertex x) {
  double s = 0.0;
  const double fx = f[x];
  for (Vertex y : g.neighbors(x))
    s += f[y] - fx;
  return s;
}

inline VertexFunction laplacian(const Graph &g, const VertexFunction &f) {
  f.require_size(g);
  VertexFunction out(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    out[x] = laplacian(g, f, x);
  return out;
}

inline double gamma1(const Graph &g, const VertexFunction &f,
                     const VertexFunction &h, Vertex x) {
  double s = 0.0;
  for (Vertex y : g.neighbors(x))
    s += (f[y] - f[x]) * (h[y] - h[x]);
  return 0.5 * s;
}

inline double gamma1(const Graph &g, const VertexFunction &f, Vertex x) {
  return gamma1(g, f, f, x);
}

namespace detail {

// Γ1(f,h)(x) where f and h are only known through their values at x and its
// neighbours, supplied by the callables.
template <class F, class H>
double gamma1_local(const Graph &g, Vertex x, F &&f, H &&h) {
  double s = 0.0;
  const double fx = f(x), hx = h(x);
  for (Vertex y : g.neighbors(x))
    s += (f(y) - fx) * (h(y) - hx);
  return 0.5 * s;
}

} // namespace detail

inline double gamma2(const Graph &g, const VertexFunction &f,
                     const VertexFunction &h, Vertex x) {
  g.check_vertex(x);
  auto lap_f = [&](Vertex y) { return laplacian(g, f, y); };
  auto lap_h = [&](Vertex y) { return laplacian(g, h, y); };
  auto val_f = [&](Vertex y) { return f[y]; };
  auto val_h = [&](Vertex y) { return h[y]; };
  auto g1 = [&](Vertex y) { return gamma1(g, f, h, y); };

  double delta_gamma1 = 0.0;
  const double g1x = g1(x);
  for (Vertex y : g.neighbors(x))
    delta_gamma1 += g1(y) - g1x;

  const double g1_lapf_h = detail::gamma1_local(g, x, lap_f, val_h);
  const double g1_f_laph = detail::gamma1_local(g, x, val_f, lap_h);
  return 0.5 * (delta_gamma1 - g1_lapf_h - g1_f_laph);
}

inline double gamma2(const Graph &g, const VertexFunction &f, Vertex x) {
  return gamma2(g, f, f, x);
}

/// Symmetric bilinear form restricted to the functions supported on
/// `support`. Entry (i, j) is the form on (δ_{support[i]}, δ_{support[j]}).
struct QuadraticForm {
  std::vector<Vertex> support;
  Matrix matrix;

  /// Form value on f, reading f only on the support.
  double evaluate(const VertexFunction &f) const {
    std::vector<double> local(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
      local[i] = f[support[i]];
    return matrix.quadratic(local);
  }

  /// Same form re-indexed on a larger support; new rows/columns are zero.
  QuadraticForm embedded_in(const std::vector<Vertex> &wider) const {
    QuadraticForm out{wider, Matrix(wider.size(), wider.size())};
    std::vector<std::size_t> pos(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      auto it = std::lower_bound(wider.begin(), wider.end(), support[i]);
      if (it == wider.end() || *it != support[i])
        throw std::invalid_argument("embedded_in: support is not a subset");
      pos[i] = static_cast<std::size_t>(it - wider.begin());
    }
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = 0; j < support.size(); ++j)
        out.matrix(pos[i], pos[j]) = matrix(i, j);
    return out;
  }
};

/// Combinatorial Laplacian D - A as a form on all vertices; its value on f
/// is Σ_y Γ1(f)(y) = -Σ_y f(y) Δf(y).
inline QuadraticForm laplacian_matrix(const Graph &g) {
  const std::size_t n = g.vertex_count();
  QuadraticForm q{std::vector<Vertex>(n), Matrix(n, n)};
  for (Vertex v = 0; v < n; ++v) {
    q.support[v] = v;
    q.matrix(v, v) = static_cast<double>(g.degree(v));
  }
  for (const auto &[u, v] : g.edges()) {
    q.matrix(u, v) = -1.0;
    q.matrix(v, u) = -1.0;
  }
  return q;
}

namespace detail {

template <class Bilinear>
QuadraticForm polarize(const Graph &g, std::vector<Vertex> support,
                       Bilinear &&op) {
  const std::size_t m = support.size();
  const std::size_t n = g.vertex_count();
  std::vector<VertexFunction> basis;
  basis.reserve(m);
  for (Vertex v : support)
    basis.push_back(VertexFunction::delta(n, v));
  QuadraticForm q{std::move(support), Matrix(m, m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double value = op(basis[i], basis[j]);
      q.matrix(i, j) = value;
      q.matrix(j, i) = value;
    }
  return q;
}

} // namespace detail

/// Γ1(·)(x) as a form on ball(x, 1), filled by evaluating Γ1 on basis pairs.
inline QuadraticForm gamma1_form(const Graph &g, Vertex x) {
  return detail::polarize(g, ball(g, x, 1),
                          [&](const VertexFunction &a, const VertexFunction &b) {
                            return gamma1(g, a, b, x);
                          });
}

/// Γ2(·)(x) as a form on ball(x, 2), filled by evaluating Γ2 on basis pairs.
inline QuadraticForm gamma2_form(const Graph &g, Vertex x) {
  return detail::polarize(g, ball(g, x, 2),
                          [&](const VertexFunction &a, const VertexFunction &b) {
                            return gamma2(g, a, b, x);
                          });
}

/// Both sides of Σ_y Γ1(f)(y) = -Σ_y f(y) Δf(y).
struct DivergenceCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  bool holds(double rel_tol = 1e-12) const {
    return std::abs(lhs - rhs) <= rel_tol * (1.0 + std::abs(lhs));
  }
};

inline DivergenceCheck divergence_check(const Graph &g, const VertexFunction &f) {
  f.require_size(g);
  DivergenceCheck out;
  for (Vertex y = 0; y < g.vertex_count(); ++y) {
    out.lhs += gamma1(g, f, y);
    out.rhs -= f[y] * laplacian(g, f, y);
  }
  return out;
}

} // namespace gamma_cone
