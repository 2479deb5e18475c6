#pragma once

// Everything at once. The audit layer pulls in nlohmann/json.

#include "graph.hpp"
#include "graph_io.hpp"
#include "random.hpp"
#include "enumerate.hpp"
#include "linalg.hpp"
#include "gamma.hpp"
#include "cone.hpp"
#include "curvature.hpp"
#include "spectral.hpp"
#include "cone_lift.hpp"
#include "audit.hpp"
