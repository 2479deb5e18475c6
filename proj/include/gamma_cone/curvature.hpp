#pragma once

#include "cone.hpp"
#include "gamma.hpp"
#include "graph.hpp"
#include "linalg.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gamma_cone {

/// The dimension N in CD(K,N): a finite real N > 1, or ∞.
class DimensionParam {
public:
  static DimensionParam finite(double n) {
    if (!(n > 1.0) || !std::isfinite(n))
      throw input_error("dimension N must be a finite real > 1 or inf, got " +
                        std::to_string(n));
    return DimensionParam(n);
  }
  static DimensionParam infinity() { return DimensionParam(); }

  /// Accepts "inf", "infinity", "∞" or a decimal number.
  static DimensionParam parse(const std::string &text) {
    if (text == "inf" || text == "infinity" || text == "Inf" || text == "∞")
      return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception &) {
      throw input_error("cannot parse dimension N from '" + text + "'");
    }
    if (used != text.size())
      throw input_error("cannot parse dimension N from '" + text + "'");
    if (std::isinf(v) && v > 0)
      return infinity();
    return finite(v);
  }

  bool is_infinite() const { return !value_.has_value(); }
  /// Finite value; throws for ∞.
  double value() const {
    if (!value_)
      throw std::logic_error("DimensionParam::value on infinite N");
    return *value_;
  }
  /// 1/N, with 1/∞ = 0.
  double inv() const { return value_ ? 1.0 / *value_ : 0.0; }

  std::string to_string() const {
    if (!value_)
      return "inf";
    std::ostringstream out;
    out << std::setprecision(17) << *value_;
    return out.str();
  }

  friend bool operator==(const DimensionParam &, const DimensionParam &) = default;

private:
  DimensionParam() = default;
  explicit DimensionParam(double n) : value_(n) {}
  std::optional<double> value_;
};

struct CurvatureLocation {
  enum class Kind { vertex, uniform, cone_point };
  Kind kind = Kind::vertex;
  Vertex vertex = 0;

  std::string to_string() const {
    switch (kind) {
    case Kind::uniform:
      return "uniform";
    case Kind::cone_point:
      return "cone-point";
    default:
      return std::to_string(vertex);
    }
  }
};

struct CurvatureResult {
  double value = 0.0;
  bool neg_infinity = false;
  DimensionParam n_param = DimensionParam::infinity();
  CurvatureLocation location;
  /// Extremal function (over the graph the curvature was computed on).
  VertexFunction witness;
  /// Canonical basis of the whole extremal space when eigenvalues tie.
  std::vector<VertexFunction> witnesses;
  /// |Γ2 - (Δf)²/N - K Γ1| at the witness, by direct operator evaluation.
  double residual = 0.0;
  /// When neg_infinity: a direction on which the curvature form is negative
  /// while Γ1 vanishes.
  std::optional<VertexFunction> kernel_violation;
};

// ---------------------------------------------------------------------------
// Pointwise forms

/// Rank-one form f ↦ (Δf(x))² on `support` (which must contain ball(x,1)).
inline QuadraticForm laplacian_squared_form(const Graph &g, Vertex x,
                                            const std::vector<Vertex> &support) {
  const std::size_t m = support.size();
  std::vector<double> coeff(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex s = support[i];
    if (s == x)
      coeff[i] = -static_cast<double>(g.degree(x));
    else if (g.has_edge(x, s))
      coeff[i] = 1.0;
  }
  QuadraticForm q{support, Matrix(m, m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      q.matrix(i, j) = coeff[i] * coeff[j];
  return q;
}

/// The pencil (A, B) at x on support ball(x, 2): A = Γ2 - (1/N)(Δ·)², B = Γ1.
struct CurvaturePencil {
  std::vector<Vertex> support;
  Matrix a;
  Matrix b;
};

inline CurvaturePencil curvature_pencil(const Graph &g, Vertex x,
                                        const DimensionParam &n_param) {
  const auto g2 = gamma2_form(g, x);
  const auto g1 = gamma1_form(g, x).embedded_in(g2.support);
  Matrix a = g2.matrix;
  if (!n_param.is_infinite())
    a = a - n_param.inv() * laplacian_squared_form(g, x, g2.support).matrix;
  return {g2.support, std::move(a), g1.matrix};
}

/// True iff Γ2(f)(x) >= (Δf)²(x)/N + K Γ1(f)(x) for every f, i.e. the form
/// A - K B on ball(x, 2) is positive semidefinite up to -1e-9 * max|entry|.
inline bool cd_holds_at(const Graph &g, Vertex x, double k,
                        const DimensionParam &n_param) {
  require_connected(g, "cd_holds_at");
  g.check_vertex(x);
  const auto pencil = curvature_pencil(g, x, n_param);
  const Matrix m = pencil.a - k * pencil.b;
  const auto eig = eigensolve_symmetric(m);
  return eig.values.front() >= -1e-9 * m.max_abs();
}

namespace detail {

inline VertexFunction lift_to_graph(const Graph &g,
                                    const std::vector<Vertex> &support,
                                    std::span<const double> local) {
  VertexFunction f(g.vertex_count());
  for (std::size_t i = 0; i < support.size(); ++i)
    f[support[i]] = local[i];
  return f;
}

inline double cd_residual(const Graph &g, Vertex x, const DimensionParam &n_param,
                          double k, const VertexFunction &f) {
  const double lap = laplacian(g, f, x);
  return std::abs(gamma2(g, f, x) - n_param.inv() * lap * lap -
                  k * gamma1(g, f, x));
}

// Columns of `basis` selected by `cols`, as a matrix.
inline Matrix select_columns(const Matrix &basis, const std::vector<std::size_t> &cols) {
  Matrix out(basis.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < basis.rows(); ++i)
      out(i, j) = basis(i, cols[j]);
  return out;
}

} // namespace detail

/// Ric_N(x) = inf { (Γ2(f) - (Δf)²/N)(x) / Γ1(f)(x) : Γ1(f)(x) > 0 }.
///
/// Solved exactly on ball(x, 2). With B = U_r Λ U_r^T (range) ⊕ U_k (kernel,
/// eigenvalues <= 1e-9 tr(B)/dim), the kernel coordinates do not enter Γ1 and
/// are minimised out: the value is λ_min of Λ^{-1/2} S Λ^{-1/2} with S the
/// Schur complement A_rr - A_rk A_kk^+ A_kr. If A is negative somewhere on
/// ker(B), or couples into a null direction of A_kk, the infimum is -∞.
inline CurvatureResult ric_pointwise(const Graph &g, Vertex x,
                                     const DimensionParam &n_param) {
  require_connected(g, "ric_pointwise");
  g.check_vertex(x);
  if (g.degree(x) == 0)
    throw input_error("ric_pointwise: vertex " + std::to_string(x) +
                      " is isolated (Γ1 form vanishes)");

  const auto pencil = curvature_pencil(g, x, n_param);
  const std::size_t dim = pencil.support.size();
  const double scale = std::max(pencil.a.max_abs(), pencil.b.max_abs());

  const auto b_eig = eigensolve_symmetric(pencil.b);
  const double kernel_eps = 1e-9 * pencil.b.trace() / static_cast<double>(dim);
  std::vector<std::size_t> range_cols, kernel_cols;
  for (std::size_t k = 0; k < dim; ++k)
    (b_eig.values[k] > kernel_eps ? range_cols : kernel_cols).push_back(k);

  const Matrix ur = detail::select_columns(b_eig.vectors, range_cols);
  const Matrix uk = detail::select_columns(b_eig.vectors, kernel_cols);
  const Matrix a_rr = ur.transposed() * pencil.a * ur;
  const Matrix a_rk = ur.transposed() * pencil.a * uk;
  const Matrix a_kk = uk.transposed() * pencil.a * uk;

  CurvatureResult result;
  result.n_param = n_param;
  result.location = {CurvatureLocation::Kind::vertex, x};

  auto report_neg_infinity = [&](std::vector<double> local_dir) {
    result.neg_infinity = true;
    result.value = -std::numeric_limits<double>::infinity();
    auto dir = uk.apply(local_dir);
    result.kernel_violation = detail::lift_to_graph(g, pencil.support, dir);
    return result;
  };

  // Pseudo-inverse of A_kk, checking positivity on the kernel.
  const std::size_t nk = kernel_cols.size();
  Matrix a_kk_pinv(nk, nk);
  if (nk > 0) {
    const auto kk_eig = eigensolve_symmetric(a_kk);
    const double tol = 1e-9 * std::max(scale, 1e-300);
    for (std::size_t j = 0; j < nk; ++j) {
      const double mu = kk_eig.values[j];
      auto w = kk_eig.vector(j);
      if (mu < -tol)
        return report_neg_infinity(w);
      if (mu <= tol) {
        if (norm2(a_rk.apply(w)) > tol)
          return report_neg_infinity(w);
        continue;
      }
      for (std::size_t r = 0; r < nk; ++r)
        for (std::size_t s = 0; s < nk; ++s)
          a_kk_pinv(r, s) += w[r] * w[s] / mu;
    }
  }

  Matrix schur = a_rr;
  if (nk > 0)
    schur = a_rr - a_rk * a_kk_pinv * a_rk.transposed();

  const std::size_t nr = range_cols.size();
  Matrix scaled(nr, nr);
  std::vector<double> inv_sqrt(nr);
  for (std::size_t i = 0; i < nr; ++i)
    inv_sqrt[i] = 1.0 / std::sqrt(b_eig.values[range_cols[i]]);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j)
      scaled(i, j) = 0.5 * (schur(i, j) + schur(j, i)) * inv_sqrt[i] * inv_sqrt[j];

  const auto c_eig = eigensolve_symmetric(scaled);
  result.value = c_eig.values.front();

  auto to_function = [&](const std::vector<double> &v) {
    std::vector<double> u(nr);
    for (std::size_t i = 0; i < nr; ++i)
      u[i] = v[i] * inv_sqrt[i];
    auto local = ur.apply(u);
    if (nk > 0) {
      // Optimal kernel coordinates: z = -A_kk^+ A_kr u.
      const auto rhs = a_rk.transposed().apply(u);
      const auto z = a_kk_pinv.apply(rhs);
      const auto kz = uk.apply(z);
      for (std::size_t i = 0; i < dim; ++i)
        local[i] -= kz[i];
    }
    return detail::lift_to_graph(g, pencil.support, local);
  };

  const double tie_tol = 1e-8 * std::max(1.0, std::abs(result.value));
  std::vector<std::vector<double>> space;
  for (std::size_t k = 0; k < nr; ++k)
    if (c_eig.values[k] - result.value <= tie_tol)
      space.push_back(to_function(c_eig.vector(k)).raw());
  for (auto &w : canonical_basis(std::move(space)))
    result.witnesses.emplace_back(std::move(w));
  result.witness = to_function(c_eig.vector(0));
  normalize_sign(result.witness.raw());
  result.residual = detail::cd_residual(g, x, n_param, result.value, result.witness);
  return result;
}

/// Ric_N(G) = min over vertices of Ric_N(x).
inline CurvatureResult ric_uniform(const Graph &g, const DimensionParam &n_param) {
  require_connected(g, "ric_uniform");
  std::optional<CurvatureResult> best;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    auto r = ric_pointwise(g, x, n_param);
    if (!best || r.value < best->value)
      best = std::move(r);
  }
  best->location = {CurvatureLocation::Kind::uniform, best->location.vertex};
  return *best;
}

// ---------------------------------------------------------------------------
// Conical curvature

/// K^c_max = |V|/2 + 3/2 - 2|V|/N.
inline double kc_max(std::size_t vertex_count, const DimensionParam &n_param) {
  const double v = static_cast<double>(vertex_count);
  return v / 2.0 + 1.5 - 2.0 * v * n_param.inv();
}

inline double kc_max(const Graph &g, const DimensionParam &n_param) {
  return kc_max(g.vertex_count(), n_param);
}

/// M = L + (1/2 - 1/N) J - ((|V| - 3)/4) I; CRic_N(G) = 2 λ_min(M).
///
/// Comes from the apex identity on the full cone with f(p) = 0:
///   Γ2^c(f)(p) = f^T L f - ((|V|-3)/4) |f|² + ½ (Σf)²,   Γ1^c(f)(p) = ½ |f|².
inline Matrix conical_curvature_matrix(const Graph &g, const DimensionParam &n_param) {
  const std::size_t n = g.vertex_count();
  const auto lap = laplacian_matrix(g).matrix;
  const double j_coeff = 0.5 - n_param.inv();
  const double i_coeff = (static_cast<double>(n) - 3.0) / 4.0;
  Matrix m = lap;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) += j_coeff - (i == j ? i_coeff : 0.0);
  return m;
}

/// CRic_N(G) via the closed-form matrix. Witnesses live on V with the
/// implicit apex value 0; the residual is evaluated directly on the
/// assembled full cone.
inline CurvatureResult cric(const Graph &g, const DimensionParam &n_param) {
  require_connected(g, "cric");
  const auto eig = eigensolve_symmetric(conical_curvature_matrix(g, n_param));
  CurvatureResult result;
  result.n_param = n_param;
  result.location = {CurvatureLocation::Kind::cone_point, g.vertex_count()};
  const double lambda_min = eig.values.front();
  result.value = 2.0 * lambda_min;

  const double tie_tol = 1e-8 * std::max(1.0, std::abs(lambda_min));
  std::vector<std::vector<double>> space;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] - lambda_min <= tie_tol)
      space.push_back(eig.vector(k));
  for (auto &w : canonical_basis(std::move(space)))
    result.witnesses.emplace_back(std::move(w));
  result.witness = VertexFunction(eig.vector(0));

  const auto cone = full_cone(g);
  const auto on_cone = extend_to_cone(cone, result.witness);
  result.residual = detail::cd_residual(cone.graph, cone.apex, n_param,
                                        result.value, on_cone);
  return result;
}

/// Both routes to CRic_N(G): closed-form matrix and the apex pointwise
/// curvature of the assembled full cone.
struct CricCrossCheck {
  double closed_form = 0.0;
  double apex_pointwise = 0.0;
  bool agrees(double tol = 1e-8) const {
    return std::abs(closed_form - apex_pointwise) <= tol;
  }
};

inline CricCrossCheck cric_cross_check(const Graph &g, const DimensionParam &n_param) {
  const auto cone = full_cone(g);
  return {cric(g, n_param).value,
          ric_pointwise(cone.graph, cone.apex, n_param).value};
}

// ---------------------------------------------------------------------------
// Poincaré inequality under CCD(K, N)

struct PoincareCheck {
  double lhs = 0.0; // Σ Γ1(f)
  double rhs = 0.0; // ((2-N)/(2N)) (Σf)² + ((2K+|V|-3)/4) Σf²
  bool holds = false;

  // Mean-zero form ‖f‖ <= sqrt(2/(2K+|V|-3)) ‖∇f‖ with ‖∇f‖² = 2 Σ Γ1.
  bool mean_zero = false;
  bool mean_zero_available = false; // false when 2K+|V|-3 <= 0
  double norm_f = 0.0;
  double norm_bound = 0.0;
  bool mean_zero_holds = false;

  double margin() const { return lhs - rhs; }
};

inline PoincareCheck poincare_check(const Graph &g, double k,
                                    const DimensionParam &n_param,
                                    const VertexFunction &f) {
  f.require_size(g);
  const double v = static_cast<double>(g.vertex_count());
  PoincareCheck out;
  for (Vertex y = 0; y < g.vertex_count(); ++y)
    out.lhs += gamma1(g, f, y);
  const double s = f.sum();
  const double sq = f.sum_of_squares();
  // (2-N)/(2N) = 1/N - 1/2.
  const double sum_coeff = n_param.inv() - 0.5;
  const double denom = 2.0 * k + v - 3.0;
  out.rhs = sum_coeff * s * s + denom / 4.0 * sq;
  out.holds = out.lhs >= out.rhs - 1e-9;

  out.mean_zero = std::abs(f.average()) <= 1e-12 * (1.0 + std::sqrt(sq));
  if (out.mean_zero) {
    out.mean_zero_available = denom > 0.0;
    out.norm_f = std::sqrt(sq);
    if (out.mean_zero_available) {
      const double grad_norm = std::sqrt(2.0 * out.lhs);
      out.norm_bound = std::sqrt(2.0 / denom) * grad_norm;
      out.mean_zero_holds = out.norm_f <= out.norm_bound + 1e-9;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Realizers of K^c_max

struct MaximizerWitness {
  VertexFunction function;
  bool constant = false;
  /// Rayleigh quotient of L on f - avg(f) (0 for constant witnesses).
  double rayleigh = 0.0;
  /// ‖L c - μ c‖ / ‖c‖ for c = f - avg(f), at μ = ((N-2)/(2N))|V|.
  double residual_derived = 0.0;
  /// Same at the stated constant μ = ((N-2)/(4N))|V|.
  double residual_stated = 0.0;
  bool matches_derived = false;
  bool matches_stated = false;
};

struct MaximizerReport {
  double cric = 0.0;
  double kc_max = 0.0;
  bool attained = false;
  bool complete = false;
  double eigenvalue_derived = 0.0; // ((N-2)/(2N))|V|
  double eigenvalue_stated = 0.0; // ((N-2)/(4N))|V|
  std::vector<MaximizerWitness> witnesses;

  /// Complete graphs: every realizer is constant.
  bool complete_branch_ok() const {
    if (!complete || !attained)
      return true;
    for (const auto &w : witnesses)
      if (!w.constant)
        return false;
    return true;
  }
  /// Every non-constant realizer is centred on a λ = ((N-2)/(2N))|V| eigenfunction.
  bool derived_ok() const {
    for (const auto &w : witnesses)
      if (!w.constant && !w.matches_derived)
        return false;
    return true;
  }
  bool stated_ok() const {
    for (const auto &w : witnesses)
      if (!w.constant && !w.matches_stated)
        return false;
    return true;
  }
  std::size_t non_constant_count() const {
    std::size_t k = 0;
    for (const auto &w : witnesses)
      k += w.constant ? 0 : 1;
    return k;
  }
};

inline MaximizerReport maximizer_analysis(const Graph &g,
                                          const DimensionParam &n_param) {
  if (n_param.is_infinite())
    throw input_error("maximizer_analysis requires finite N");
  require_connected(g, "maximizer_analysis");
  const double n = n_param.value();
  const double v = static_cast<double>(g.vertex_count());

  MaximizerReport report;
  const auto c = cric(g, n_param);
  report.cric = c.value;
  report.kc_max = kc_max(g, n_param);
  report.attained = std::abs(report.cric - report.kc_max) <= 1e-8;
  report.complete = g.is_complete();
  report.eigenvalue_derived = (n - 2.0) / (2.0 * n) * v;
  report.eigenvalue_stated = (n - 2.0) / (4.0 * n) * v;
  if (!report.attained)
    return report;

  const auto lap = laplacian_matrix(g).matrix;
  for (const auto &w : c.witnesses) {
    MaximizerWitness mw;
    mw.function = w;
    const auto centred = w.centered();
    const double cn = norm2(centred.values());
    mw.constant = cn <= 1e-8 * std::max(1.0, norm2(w.values()));
    if (!mw.constant) {
      const auto lc = lap.apply(centred.values());
      mw.rayleigh = dot(centred.values(), lc) / (cn * cn);
      auto residual_at = [&](double mu) {
        double s = 0.0;
        for (std::size_t i = 0; i < lc.size(); ++i)
          s += (lc[i] - mu * centred[i]) * (lc[i] - mu * centred[i]);
        return std::sqrt(s) / cn;
      };
      mw.residual_derived = residual_at(report.eigenvalue_derived);
      mw.residual_stated = residual_at(report.eigenvalue_stated);
      mw.matches_derived = mw.residual_derived <= 1e-8;
      mw.matches_stated = mw.residual_stated <= 1e-8;
    }
    report.witnesses.push_back(std::move(mw));
  }
  return report;
}

} // namespace gamma_cone
