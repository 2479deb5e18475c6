#pragma once

#include "cone.hpp"
#include "cone_lift.hpp"
#include "curvature.hpp"
#include "gamma.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "random.hpp"
#include "spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gamma_cone {

inline constexpr const char *toolkit_version = "1.0.0";

using json = nlohmann::ordered_json;

enum class CheckStatus {
  pass,
  fail,
  hypothesis_not_met,
  convention_a_pass_b_fail,
  convention_a_fail_b_pass,
  info, // observation only, never affects the exit code
};

inline const char *to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass:
    return "pass";
  case CheckStatus::fail:
    return "fail";
  case CheckStatus::hypothesis_not_met:
    return "hypothesis-not-met";
  case CheckStatus::convention_a_pass_b_fail:
    return "convention-A-pass/convention-B-fail";
  case CheckStatus::convention_a_fail_b_pass:
    return "convention-A-fail/convention-B-pass";
  case CheckStatus::info:
    return "info";
  }
  return "unknown";
}

inline CheckStatus from_conventions(bool a, bool b) {
  if (a && b)
    return CheckStatus::pass;
  if (!a && !b)
    return CheckStatus::fail;
  return a ? CheckStatus::convention_a_pass_b_fail
           : CheckStatus::convention_a_fail_b_pass;
}

/// Doubles as JSON numbers; non-finite values as "inf", "-inf", "nan".
inline json json_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return v;
}

inline json json_function(const VertexFunction &f) {
  json arr = json::array();
  for (double v : f.values())
    arr.push_back(json_number(v));
  return arr;
}

struct Check {
  std::string name;
  std::string paper_ref; // the statement being checked, in words
  CheckStatus status = CheckStatus::pass;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  std::optional<VertexFunction> witness;
  json extra = json::object();

  json to_json() const {
    json j;
    j["name"] = name;
    j["paper_ref"] = paper_ref;
    j["status"] = to_string(status);
    j["lhs"] = json_number(lhs);
    j["rhs"] = json_number(rhs);
    j["tolerance"] = json_number(tolerance);
    if (witness)
      j["witness"] = json_function(*witness);
    for (const auto &[key, value] : extra.items())
      j[key] = value;
    return j;
  }
};

struct AuditReport {
  std::string graph_id;
  std::vector<Check> checks;
  std::string version = toolkit_version;
  std::uint64_t seed = 0;
  json results = json::object(); // command-specific payload

  bool any_failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const Check &c) {
      return c.status == CheckStatus::fail;
    });
  }

  json to_json() const {
    json j;
    j["graph_id"] = graph_id;
    j["toolkit_version"] = version;
    j["seed"] = seed;
    if (!results.empty())
      j["results"] = results;
    json arr = json::array();
    for (const auto &c : checks)
      arr.push_back(c.to_json());
    j["checks"] = std::move(arr);
    return j;
  }

  std::string to_line() const { return to_json().dump(); }
};

struct NamedGraph {
  std::string id;
  Graph graph;
};

// ---------------------------------------------------------------------------
// Per-graph audit

struct AuditOptions {
  std::uint64_t seed = 0;
  std::vector<DimensionParam> n_params{DimensionParam::finite(2.0),
                                       DimensionParam::finite(5.0),
                                       DimensionParam::infinity()};
  std::size_t random_functions = 100;
  std::size_t cone_trials = 4;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Check make_check(std::string name, std::string ref, bool ok, double lhs,
                        double rhs, double tol) {
  Check c;
  c.name = std::move(name);
  c.paper_ref = std::move(ref);
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = tol;
  return c;
}

inline std::string suffix(const DimensionParam &n) { return "[N=" + n.to_string() + "]"; }

} // namespace detail

inline AuditReport audit_graph(const NamedGraph &input, const AuditOptions &opt) {
  using detail::make_check;
  const Graph &g = input.graph;
  require_connected(g, "audit");
  const std::size_t n = g.vertex_count();
  const double nv = static_cast<double>(n);

  AuditReport report;
  report.graph_id = input.id;
  report.seed = opt.seed;
  report.results["n"] = n;
  report.results["edges"] = g.edge_count();
  if (n <= graph6_max_vertices)
    report.results["graph6"] = encode_graph6(g);

  // Keyed on the graph itself so reports do not depend on corpus order.
  Xorshift64Star rng(opt.seed ^ detail::fnv1a(encode_edge_list(g)));

  {
    double worst = 0.0;
    for (std::size_t t = 0; t < opt.cone_trials; ++t) {
      std::vector<Vertex> apex_set;
      for (Vertex v = 0; v < n; ++v)
        if (t == 0 || rng.chance(0.5))
          apex_set.push_back(v);
      if (apex_set.empty())
        apex_set.push_back(rng.below(n));
      const auto cone = partial_cone(g, apex_set);
      const auto f = random_function(rng, n);
      for (Vertex x = 0; x <= cone.apex; ++x)
        worst = std::max(worst, cone_oracle_discrepancy(cone, f, x));
    }
    report.checks.push_back(make_check(
        "cone_operator_closed_forms", "cone Γ-calculus closed forms vs direct evaluation",
        worst <= 1e-9, worst, 0.0, 1e-9));
  }

  {
    double worst_rel = -1.0;
    DivergenceCheck worst_dc;
    for (int t = 0; t < 3; ++t) {
      const auto dc = divergence_check(g, random_function(rng, n));
      const double rel = std::abs(dc.lhs - dc.rhs) / (1.0 + std::abs(dc.lhs));
      if (rel > worst_rel) {
        worst_rel = rel;
        worst_dc = dc;
      }
    }
    report.checks.push_back(make_check("divergence_identity",
                                       "Σ Γ1(f) = -Σ f Δf", worst_dc.holds(),
                                       worst_dc.lhs, worst_dc.rhs, 1e-12));
  }

  std::optional<double> lam1;
  if (n >= 2)
    lam1 = lambda1(g);

  for (const auto &np : opt.n_params) {
    const auto tag = detail::suffix(np);

    if (n >= 2) {
      const auto ru = ric_uniform(g, np);
      auto c = make_check("ric_uniform_realized" + tag,
                          "Ric_N(G) is attained by an extremal function",
                          ru.residual <= 1e-8, ru.residual, 0.0, 1e-8);
      c.extra["ric"] = json_number(ru.value);
      report.checks.push_back(std::move(c));
    }

    const auto cr = cric(g, np);
    const auto cone = full_cone(g);
    const double apex_ric = ric_pointwise(cone.graph, cone.apex, np).value;
    report.checks.push_back(make_check(
        "cric_two_path" + tag, "CRic_N from the closed-form matrix = apex curvature of C(G)",
        std::abs(cr.value - apex_ric) <= 1e-8, cr.value, apex_ric, 1e-8));

    const double ceiling = kc_max(g, np);
    report.checks.push_back(make_check("kc_max_ceiling" + tag,
                                       "conical curvature cannot exceed K^c_max",
                                       cr.value <= ceiling + 1e-9, cr.value, ceiling,
                                       1e-9));
    if (g.is_complete())
      report.checks.push_back(make_check(
          "kc_max_attained_complete" + tag, "complete graphs attain K^c_max",
          std::abs(cr.value - ceiling) <= 1e-8, cr.value, ceiling, 1e-8));

    {
      PoincareCheck worst = poincare_check(g, cr.value, np, cr.witness);
      for (std::size_t t = 0; t < opt.random_functions; ++t) {
        const auto pc = poincare_check(g, cr.value, np, random_function(rng, n));
        if (pc.margin() < worst.margin())
          worst = pc;
      }
      report.checks.push_back(make_check("poincare_inequality" + tag,
                                         "CCD(K,N) implies the global Poincaré inequality",
                                         worst.holds, worst.lhs, worst.rhs, 1e-9));

      const auto sharp = poincare_check(g, cr.value + 0.1, np, cr.witness);
      auto c = make_check("poincare_sharpness" + tag,
                          "the CRic witness violates Poincaré at K = CRic + 0.1",
                          sharp.lhs < sharp.rhs, sharp.lhs, sharp.rhs, 0.0);
      c.witness = cr.witness;
      report.checks.push_back(std::move(c));
    }

    if (n >= 2) {
      const auto gap = verify_ccd_spectral_gap(g, np);
      report.checks.push_back(make_check(
          "spectral_gap_derived" + tag, "λ1(L) >= (2K + |V| - 3)/4 under CCD(K,N)",
          gap.gap_derived.holds, gap.gap_derived.lhs, gap.gap_derived.rhs, 1e-9));
      {
        Check c;
        c.name = "spectral_gap_stated" + tag;
        c.paper_ref = "λ1 >= K + (|V| - 3)/2 under CCD(K,N)";
        c.status = from_conventions(gap.gap_stated_a.holds, gap.gap_stated_b.holds);
        c.lhs = gap.gap_stated_a.lhs;
        c.rhs = gap.gap_stated_a.rhs;
        c.tolerance = 1e-9;
        c.extra["lhs_convention_b"] = json_number(gap.gap_stated_b.lhs);
        report.checks.push_back(std::move(c));
      }
      if (gap.cheeger_applicable && gap.h) {
        report.checks.push_back(make_check(
            "cheeger_bound_stated" + tag,
            "h(G) >= (2|V| + 4NK + N|V| - 6N)/(8N) under CCD(K,N), N >= 2",
            gap.h_stated.holds, gap.h_stated.lhs, gap.h_stated.rhs, 1e-9));
        report.checks.push_back(make_check(
            "cheeger_bound_derived" + tag,
            "h(G) >= (2|V| + 2NK - 3N)/(4N) from the Poincaré inequality",
            gap.h_derived.holds, gap.h_derived.lhs, gap.h_derived.rhs, 1e-9));
        Check c;
        c.name = "lambda1_cheeger_bound_stated" + tag;
        c.paper_ref = "λ1 >= (2|V| + 4NK + N|V| - 6N)²/(128 N² d_max) under CCD(K,N)";
        c.status = from_conventions(gap.lambda_stated_a.holds, gap.lambda_stated_b.holds);
        c.lhs = gap.lambda_stated_a.lhs;
        c.rhs = gap.lambda_stated_a.rhs;
        c.tolerance = 1e-9;
        c.extra["lhs_convention_b"] = json_number(gap.lambda_stated_b.lhs);
        report.checks.push_back(std::move(c));
      }
    }

    if (np.is_infinite()) {
      Check c = make_check("maximizer_analysis" + tag,
                           "realizers of K^c_max (finite N only)", true, cr.value,
                           ceiling, 1e-8);
      c.status = CheckStatus::hypothesis_not_met;
      report.checks.push_back(std::move(c));
    } else {
      const auto mx = maximizer_analysis(g, np);
      Check attained = make_check("maximizer_attained" + tag,
                                  "CRic_N(G) = K^c_max", true, mx.cric, mx.kc_max, 1e-8);
      attained.status = CheckStatus::info;
      attained.extra["attained"] = mx.attained;
      report.checks.push_back(std::move(attained));
      if (mx.attained && mx.complete)
        report.checks.push_back(make_check(
            "maximizer_complete_constant" + tag,
            "on complete graphs every realizer of K^c_max is constant",
            mx.complete_branch_ok(), static_cast<double>(mx.non_constant_count()),
            0.0, 0.0));
      if (mx.attained && mx.non_constant_count() > 0) {
        double worst_derived = 0.0, worst_stated = 0.0;
        for (const auto &w : mx.witnesses) {
          worst_derived = std::max(worst_derived, w.residual_derived);
          worst_stated = std::max(worst_stated, w.residual_stated);
        }
        report.checks.push_back(make_check(
            "maximizer_eigenfunction_derived" + tag,
            "non-constant realizers: L(f - avg f) = ((N-2)/(2N))|V| (f - avg f)",
            mx.derived_ok(), worst_derived, 0.0, 1e-8));
        Check c = make_check("maximizer_eigenfunction_stated" + tag,
                             "non-constant realizers at λ1 = ((N-2)/(4N))|V|",
                             mx.stated_ok(), worst_stated, 0.0, 1e-8);
        c.status = CheckStatus::info;
        c.extra["holds"] = mx.stated_ok();
        report.checks.push_back(std::move(c));
      }
    }
  }

  if (n >= 2 && n <= cheeger_max_vertices) {
    const auto dam = verify_dam(g);
    report.checks.push_back(make_check("dam_lower", "λ1/2 <= h(G)", dam.lower.holds,
                                       dam.lower.lhs, dam.lower.rhs, 1e-9));
    report.checks.push_back(make_check("dam_upper", "h(G) <= sqrt(2 d_max λ1)",
                                       dam.upper.holds, dam.upper.lhs, dam.upper.rhs,
                                       1e-9));
  }

  if (lam1) {
    const auto gap = ccd_from_gap(g, *lam1);
    if (!gap.threshold_defined()) {
      Check c = make_check("ccd_from_gap", "λ1 >= λ implies CCD(K,N)", true,
                           gap.lambda, nv, 0.0);
      c.status = CheckStatus::hypothesis_not_met;
      report.checks.push_back(std::move(c));
    } else {
      auto c = make_check("ccd_from_gap_derived",
                          "λ1 >= λ implies CCD((2λ - |V| + 3)/2, 2|V|/(|V| - λ))",
                          gap.verified, gap.cric_at_threshold, gap.k_derived, 1e-9);
      c.extra["lambda"] = json_number(gap.lambda);
      c.extra["n_threshold"] =
          gap.n_bound_infinite ? json("inf") : json_number(*gap.n_bound);
      report.checks.push_back(std::move(c));
      Check p = make_check("ccd_from_gap_stated",
                           "λ1 >= λ implies CCD(K,N) for K >= (λ - |V| + 3)/2",
                           gap.stated_holds, gap.cric_at_threshold, gap.k_stated, 1e-9);
      p.status = CheckStatus::info;
      p.extra["holds"] = gap.stated_holds;
      report.checks.push_back(std::move(p));
    }
  }

  if (n >= 2) {
    const auto lift = verify_cone_lift(g);
    json values = json::array();
    for (double v : lift.pointwise)
      values.push_back(json_number(v));
    report.results["cone_lift_pointwise"] = std::move(values);
    for (double shift : {0.5, 1.0}) {
      const bool holds = shift == 0.5 ? lift.clears_half : lift.clears_one;
      Check c = make_check(shift == 0.5 ? "cone_lift_k_plus_half" : "cone_lift_k_plus_one",
                           shift == 0.5 ? "Ric_∞(G) = K <= 1/2: base of C(G) satisfies CD(K + 1/2, ∞)"
                                        : "Ric_∞(G) = K <= 1/2: base of C(G) satisfies CD(K + 1, ∞)",
                           holds, lift.min_pointwise, lift.base_ric + shift, 1e-9);
      c.status = lift.hypothesis_met ? CheckStatus::info : CheckStatus::hypothesis_not_met;
      c.extra["holds"] = holds;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Command payloads

/// Pointwise (and, for all vertices, uniform) curvature with witnesses.
inline AuditReport curvature_report(const NamedGraph &input,
                                    std::optional<Vertex> at,
                                    const DimensionParam &np) {
  const Graph &g = input.graph;
  require_connected(g, "curvature");
  AuditReport report;
  report.graph_id = input.id;
  report.results["command"] = "curvature";
  report.results["n"] = np.to_string();

  auto entry = [&](const CurvatureResult &r) {
    json j;
    j["location"] = r.location.to_string();
    j["value"] = r.neg_infinity ? json("-inf") : json_number(r.value);
    j["residual"] = json_number(r.residual);
    j["witness"] = json_function(r.witness);
    return j;
  };
  auto residual_check = [&](const CurvatureResult &r) {
    return detail::make_check("witness_residual[" + r.location.to_string() + "]",
                              "the extremal function attains Ric_N",
                              r.neg_infinity || r.residual <= 1e-8, r.residual, 0.0,
                              1e-8);
  };

  json values = json::array();
  if (at) {
    g.check_vertex(*at);
    const auto r = ric_pointwise(g, *at, np);
    values.push_back(entry(r));
    report.checks.push_back(residual_check(r));
  } else {
    std::optional<CurvatureResult> worst;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      auto r = ric_pointwise(g, x, np);
      values.push_back(entry(r));
      report.checks.push_back(residual_check(r));
      if (!worst || r.value < worst->value)
        worst = std::move(r);
    }
    worst->location.kind = CurvatureLocation::Kind::uniform;
    report.results["uniform"] = entry(*worst);
  }
  report.results["vertices"] = std::move(values);
  return report;
}

/// Conical curvature, its ceiling and the realizers.
inline AuditReport cric_report(const NamedGraph &input, const DimensionParam &np) {
  const Graph &g = input.graph;
  require_connected(g, "cric");
  AuditReport report;
  report.graph_id = input.id;
  report.results["command"] = "cric";
  report.results["n"] = np.to_string();

  const auto cr = cric(g, np);
  const double ceiling = kc_max(g, np);
  const bool attained = std::abs(cr.value - ceiling) <= 1e-8;
  report.results["cric"] = json_number(cr.value);
  report.results["kc_max"] = json_number(ceiling);
  report.results["gap"] = json_number(ceiling - cr.value);
  report.results["attained"] = attained;
  json witnesses = json::array();
  for (const auto &w : cr.witnesses)
    witnesses.push_back(json_function(w));
  report.results["witnesses"] = std::move(witnesses);

  report.checks.push_back(detail::make_check("kc_max_ceiling",
                                             "conical curvature cannot exceed K^c_max",
                                             cr.value <= ceiling + 1e-9, cr.value,
                                             ceiling, 1e-9));
  report.checks.push_back(detail::make_check("cric_witness_residual",
                                             "the CRic witness attains the bound",
                                             cr.residual <= 1e-8, cr.residual, 0.0, 1e-8));
  if (!np.is_infinite() && attained) {
    const auto mx = maximizer_analysis(g, np);
    json info = json::array();
    for (const auto &w : mx.witnesses) {
      json j;
      j["constant"] = w.constant;
      j["rayleigh"] = json_number(w.rayleigh);
      j["matches_derived"] = w.matches_derived;
      j["matches_stated"] = w.matches_stated;
      info.push_back(std::move(j));
    }
    report.results["realizers"] = std::move(info);
    if (mx.complete)
      report.checks.push_back(detail::make_check(
          "maximizer_complete_constant",
          "on complete graphs every realizer of K^c_max is constant",
          mx.complete_branch_ok(), static_cast<double>(mx.non_constant_count()), 0.0,
          0.0));
    else if (mx.non_constant_count() > 0)
      report.checks.push_back(detail::make_check(
          "maximizer_eigenfunction_derived",
          "non-constant realizers: L(f - avg f) = ((N-2)/(2N))|V| (f - avg f)",
          mx.derived_ok(), static_cast<double>(mx.non_constant_count()), 0.0, 1e-8));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Parallel driver

/// Worker count from GAMMA_CONE_THREADS (0 or unset = hardware concurrency).
inline std::size_t configured_threads() {
  std::size_t requested = 0;
  if (const char *env = std::getenv("GAMMA_CONE_THREADS"))
    requested = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
  if (requested == 0)
    requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Runs `job` on every item, in parallel, returning results in input order.
template <class Item, class Result>
std::vector<Result> ordered_parallel_map(const std::vector<Item> &items,
                                         const std::function<Result(const Item &)> &job,
                                         std::size_t threads) {
  std::vector<Result> out(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        out[i] = job(items[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, items.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &th : pool)
    th.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

/// One newline-delimited JSON report per graph, in corpus order.
inline std::vector<AuditReport> run_audit(const std::vector<NamedGraph> &corpus,
                                          const AuditOptions &opt,
                                          std::size_t threads = configured_threads()) {
  return ordered_parallel_map<NamedGraph, AuditReport>(
      corpus, [&](const NamedGraph &g) { return audit_graph(g, opt); }, threads);
}

} // namespace gamma_cone
