#pragma once

#include "curvature.hpp"
#include "gamma.hpp"
#include "graph.hpp"
#include "linalg.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace gamma_cone {

// Throughout, λ1 is the second-smallest eigenvalue of L = D - A
// ("convention A"). Where a bound's constants only work with the doubled
// value 2·λ1(L) ("convention B", from ‖∇f‖² = 2ΣΓ1 in the Rayleigh
// quotient), both are evaluated and reported side by side.

struct SpectralResult {
  std::vector<double> eigenvalues; // ascending
  Matrix eigenvectors;             // columns, orthonormal
  double lambda1 = 0.0;
};

inline SpectralResult laplacian_spectrum(const Graph &g) {
  auto eig = eigensolve_symmetric(laplacian_matrix(g).matrix);
  SpectralResult out{std::move(eig.values), std::move(eig.vectors), 0.0};
  if (out.eigenvalues.size() > 1)
    out.lambda1 = out.eigenvalues[1];
  return out;
}

/// Spectral gap of L = D - A.
inline double lambda1(const Graph &g) {
  require_connected(g, "lambda1");
  if (g.vertex_count() < 2)
    throw input_error("lambda1: needs at least two vertices");
  return laplacian_spectrum(g).lambda1;
}

/// Σ Γ1(f) / Σ f² for f != 0.
inline double rayleigh_quotient(const Graph &g, const VertexFunction &f) {
  return laplacian_matrix(g).evaluate(f) / f.sum_of_squares();
}

// ---------------------------------------------------------------------------
// Cheeger constant

class cheeger_infeasible_error : public input_error {
public:
  using input_error::input_error;
};

inline constexpr std::size_t cheeger_max_vertices = 20;

struct CheegerResult {
  std::size_t h_num = 0; // |∂F|
  std::size_t h_den = 1; // |F|
  std::vector<Vertex> witness;

  double h() const { return static_cast<double>(h_num) / static_cast<double>(h_den); }
};

/// Number of edges with exactly one end in `subset`.
inline std::size_t boundary_size(const Graph &g, const std::vector<Vertex> &subset) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : subset)
    in[v] = 1;
  std::size_t count = 0;
  for (const auto &[u, v] : g.edges())
    count += (in[u] != in[v]) ? 1 : 0;
  return count;
}

/// Exact h(G) = min |∂F| / min(|F|, |V \ F|) over all F with 0 < |F| <= |V|/2.
/// Ties go to the lexicographically smallest sorted vertex list.
inline CheegerResult cheeger(const Graph &g) {
  require_connected(g, "cheeger");
  const std::size_t n = g.vertex_count();
  if (n < 2)
    throw input_error("cheeger: needs at least two vertices");
  if (n > cheeger_max_vertices)
    throw cheeger_infeasible_error(
        "cheeger: exact enumeration infeasible for " + std::to_string(n) +
        " vertices (cap is 20)");

  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto &[u, v] : g.edges()) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  // Lex order on sorted vertex lists: the first position where they differ
  // decides, and a proper prefix is smaller.
  auto lex_less = [](std::uint32_t a, std::uint32_t b) {
    while (a && b) {
      const int la = __builtin_ctz(a), lb = __builtin_ctz(b);
      if (la != lb)
        return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  };

  std::uint32_t best = 0;
  std::size_t best_num = 0, best_den = 0;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t f = 1; f <= full && f != 0; ++f) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(f));
    if (2 * size > n)
      continue;
    std::size_t boundary = 0;
    for (std::uint32_t rest = f; rest; rest &= rest - 1)
      boundary += static_cast<std::size_t>(
          __builtin_popcount(nbr[__builtin_ctz(rest)] & ~f));
    if (best == 0) {
      best = f;
      best_num = boundary;
      best_den = size;
      continue;
    }
    const auto lhs = boundary * best_den, rhs = best_num * size;
    if (lhs < rhs || (lhs == rhs && lex_less(f, best))) {
      best = f;
      best_num = boundary;
      best_den = size;
    }
    if (f == full)
      break;
  }

  CheegerResult out{best_num, best_den, {}};
  for (std::uint32_t rest = best; rest; rest &= rest - 1)
    out.witness.push_back(static_cast<Vertex>(__builtin_ctz(rest)));
  return out;
}

// ---------------------------------------------------------------------------
// Bound verifications

/// One side-by-side inequality lhs >= rhs (or lhs <= rhs, per `holds`).
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline BoundCheck check_ge(double lhs, double rhs, double tol = 1e-9) {
  return {lhs, rhs, lhs >= rhs - tol};
}

inline BoundCheck check_le(double lhs, double rhs, double tol = 1e-9) {
  return {lhs, rhs, lhs <= rhs + tol};
}

/// λ1/2 <= h(G) <= sqrt(2 d_max λ1).
struct DamReport {
  double lambda1 = 0.0;
  double h = 0.0;
  std::size_t d_max = 0;
  BoundCheck lower; // λ1/2 <= h
  BoundCheck upper; // h <= sqrt(2 d_max λ1)
  bool holds() const { return lower.holds && upper.holds; }
};

inline DamReport verify_dam(const Graph &g) {
  DamReport r;
  r.h = cheeger(g).h();
  r.lambda1 = lambda1(g);
  r.d_max = g.max_degree();
  r.lower = check_le(r.lambda1 / 2.0, r.h);
  r.upper = check_le(r.h, std::sqrt(2.0 * static_cast<double>(r.d_max) * r.lambda1));
  return r;
}

/// Spectral consequences of CCD(K, N) with K = CRic_N(G).
struct SpectralGapReport {
  double k = 0.0;
  double lambda1 = 0.0;
  /// λ1(L) >= (2K + |V| - 3)/4: mean-zero f in the Poincaré inequality.
  BoundCheck gap_derived;
  /// λ1 >= K + (|V| - 3)/2 with λ1 = λ1(L) (A) and λ1 = 2λ1(L) (B).
  BoundCheck gap_stated_a;
  BoundCheck gap_stated_b;
  /// Cheeger-side bounds; only meaningful for N >= 2 (N = ∞ included).
  bool cheeger_applicable = false;
  std::optional<double> h;
  BoundCheck h_stated;   // h >= (2|V| + 4NK + N|V| - 6N)/(8N)
  BoundCheck h_derived;   // h >= (2|V| + 2NK - 3N)/(4N)
  BoundCheck lambda_stated_a; // λ1 >= (2|V|+4NK+N|V|-6N)²/(128 N² d_max)
  BoundCheck lambda_stated_b;
};

/// (2|V| + 4NK + N|V| - 6N)/(8N), continued to N = ∞ as (4K + |V| - 6)/8.
inline double stated_cheeger_bound(std::size_t vertex_count, double k,
                                  const DimensionParam &n_param) {
  const double v = static_cast<double>(vertex_count);
  return 2.0 * v * n_param.inv() / 8.0 + (4.0 * k + v - 6.0) / 8.0;
}

/// (2|V| + 2NK - 3N)/(4N), continued to N = ∞ as (2K - 3)/4.
inline double derived_cheeger_bound(std::size_t vertex_count, double k,
                                    const DimensionParam &n_param) {
  const double v = static_cast<double>(vertex_count);
  return 2.0 * v * n_param.inv() / 4.0 + (2.0 * k - 3.0) / 4.0;
}

inline SpectralGapReport verify_ccd_spectral_gap(const Graph &g,
                                                 const DimensionParam &n_param) {
  SpectralGapReport r;
  const double v = static_cast<double>(g.vertex_count());
  r.k = cric(g, n_param).value;
  r.lambda1 = lambda1(g);
  r.gap_derived = check_ge(r.lambda1, (2.0 * r.k + v - 3.0) / 4.0);
  const double stated = r.k + (v - 3.0) / 2.0;
  r.gap_stated_a = check_ge(r.lambda1, stated);
  r.gap_stated_b = check_ge(2.0 * r.lambda1, stated);

  r.cheeger_applicable = n_param.is_infinite() || n_param.value() >= 2.0;
  if (r.cheeger_applicable && g.vertex_count() <= cheeger_max_vertices) {
    r.h = cheeger(g).h();
    const double hb = stated_cheeger_bound(g.vertex_count(), r.k, n_param);
    r.h_stated = check_ge(*r.h, hb);
    r.h_derived = check_ge(*r.h, derived_cheeger_bound(g.vertex_count(), r.k, n_param));
    // (8N·hb)² / (128 N² d_max) = hb² / (2 d_max)
    const double lb = hb * hb / (2.0 * static_cast<double>(g.max_degree()));
    r.lambda_stated_a = check_ge(r.lambda1, lb);
    r.lambda_stated_b = check_ge(2.0 * r.lambda1, lb);
  }
  return r;
}

/// Curvature-dimension parameters implied by a spectral lower bound λ.
///
/// λ is in the Rayleigh convention ΣΓ1(f) >= (λ/2) Σ(f - avg f)², so any
/// 0 < λ <= 2 λ1(L) is admissible.
struct GapToCcdReport {
  double lambda = 0.0;
  /// N >= 2|V|/(|V| - λ); nullopt when undefined (λ > |V|), +∞ when λ = |V|.
  std::optional<double> n_bound;
  bool n_bound_infinite = false;
  /// (2λ - |V| + 3)/2: largest K for which the comparison goes through.
  double k_derived = 0.0;
  /// (λ - |V| + 3)/2, the stated form.
  double k_stated = 0.0;
  /// CRic at the threshold N.
  double cric_at_threshold = 0.0;
  bool verified = false;       // CRic >= k_derived
  bool stated_holds = false;  // CRic >= k_stated
  bool threshold_defined() const { return n_bound.has_value() || n_bound_infinite; }
};

inline GapToCcdReport ccd_from_gap(const Graph &g, double lambda) {
  require_connected(g, "ccd_from_gap");
  const double v = static_cast<double>(g.vertex_count());
  const double cap = 2.0 * lambda1(g);
  if (!(lambda > 0.0) || lambda > cap + 1e-9)
    throw input_error("ccd_from_gap: need 0 < lambda <= 2*lambda1(L) = " +
                      std::to_string(cap));
  GapToCcdReport r;
  r.lambda = lambda;
  r.k_derived = (2.0 * lambda - v + 3.0) / 2.0;
  r.k_stated = (lambda - v + 3.0) / 2.0;
  std::optional<DimensionParam> threshold;
  if (std::abs(lambda - v) <= 1e-9) {
    r.n_bound_infinite = true;
    threshold = DimensionParam::infinity();
  } else if (lambda < v) {
    r.n_bound = 2.0 * v / (v - lambda);
    threshold = DimensionParam::finite(*r.n_bound);
  }
  if (!threshold)
    return r;
  r.cric_at_threshold = cric(g, *threshold).value;
  r.verified = r.cric_at_threshold >= r.k_derived - 1e-9;
  r.stated_holds = r.cric_at_threshold >= r.k_stated - 1e-9;
  return r;
}

} // namespace gamma_cone
