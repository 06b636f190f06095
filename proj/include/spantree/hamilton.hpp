#pragma once

// Constructive Hamilton cycles in Dirac graphs (min degree >= n/2) via
// rotation-extension. Deterministic: the start vertex is the lowest id and
// every choice takes the lowest eligible id.

#include <vector>

#include "spantree/graph.hpp"

namespace spantree {

struct HamiltonCycle {
  std::vector<int> order;  // cyclic, each vertex exactly once
};

// Needs |g| >= 3; terminates with a verified cycle whenever min degree
// >= |g|/2. On inputs below that bound the construction still runs (it can
// succeed, e.g. a bare cycle) but a stall is explicit: std::invalid_argument
// naming an offending low-degree vertex, or std::runtime_error if the degree
// bound held and the stall is an internal bug.
HamiltonCycle dirac_hamilton_cycle(const Graph& g);

// Consecutive (cyclic) adjacency and exactly-once coverage; error or empty.
std::string check_hamilton_cycle(const Graph& g, const HamiltonCycle& c);

}  // namespace spantree
