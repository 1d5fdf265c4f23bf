#pragma once

// Umbrella header for the entroute library: adaptive routing under quantum
// memory failures in entangled overlay networks. Overlay networks embed into
// a k-dimensional lattice base-graph, routes are found by decentralized
// greedy search, and replacement paths around failed nodes come from a
// penalty-driven node-disjoint path heuristic.

#include "entroute/base_graph.hpp"
#include "entroute/baselines.hpp"
#include "entroute/cost_model.hpp"
#include "entroute/disjoint.hpp"
#include "entroute/errors.hpp"
#include "entroute/failure.hpp"
#include "entroute/generate.hpp"
#include "entroute/json_io.hpp"
#include "entroute/ops.hpp"
#include "entroute/overlay.hpp"
#include "entroute/rng.hpp"
#include "entroute/routing.hpp"
#include "entroute/scenario.hpp"
