#pragma once

#include "cone.hpp"
#include "curvature.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace gamma_cone {

/// Curvature of the base vertices inside the full cone, compared with
/// K + 1/2 and K + 1 for K = Ric_∞(G). Neither bound is assumed to hold.
/// The claim concerns K <= 1/2; outside that range the values are still
/// computed but hypothesis_met is false and nothing should be asserted.
struct ConeLiftReport {
  double base_ric = 0.0;
  bool hypothesis_met = false;      // K <= 1/2
  std::vector<double> pointwise;    // Ric_∞ in C(G) at each base vertex
  double min_pointwise = 0.0;
  bool clears_half = false;         // min >= K + 1/2
  bool clears_one = false;          // min >= K + 1
};

inline ConeLiftReport verify_cone_lift(const Graph &g) {
  require_connected(g, "verify_cone_lift");
  const auto inf = DimensionParam::infinity();
  ConeLiftReport r;
  r.base_ric = g.vertex_count() > 1 ? ric_uniform(g, inf).value
                                    : std::numeric_limits<double>::infinity();
  r.hypothesis_met = r.base_ric <= 0.5 + 1e-12;
  const auto cone = full_cone(g);
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    r.pointwise.push_back(ric_pointwise(cone.graph, x, inf).value);
  r.min_pointwise = *std::min_element(r.pointwise.begin(), r.pointwise.end());
  r.clears_half = r.min_pointwise >= r.base_ric + 0.5 - 1e-9;
  r.clears_one = r.min_pointwise >= r.base_ric + 1.0 - 1e-9;
  return r;
}

} // namespace gamma_cone
