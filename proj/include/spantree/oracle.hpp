#pragma once

// Exact small-scale ground truth: spanning-tree containment by backtracking
// and dominating-set search. Budgets yield an explicit "unknown", never a
// guess.

#include <cstdint>
#include <optional>
#include <vector>

#include "spantree/embedding.hpp"
#include "spantree/graph.hpp"
#include "spantree/tree.hpp"

namespace spantree {

enum class OracleVerdict { found, absent, unknown };

struct ContainmentResult {
  OracleVerdict verdict = OracleVerdict::unknown;
  std::optional<Embedding> embedding;  // when found
  long long nodes_explored = 0;
};

struct ContainmentOptions {
  long long node_budget = 50'000'000;
  // Alternate deterministic search order, for cross-checking that "absent"
  // answers are stable under permuting the backtracking.
  bool alternate_order = false;
};

// Complete backtracking over left-ordering placements rooted at a max-degree
// vertex, pools intersected with the parent image's neighborhood, pruned on
// degree and pool size. Requires |g| == |t|.
ContainmentResult contains_spanning_tree(const Graph& g, const Tree& t,
                                         const ContainmentOptions& opt = {});

struct DominationResult {
  OracleVerdict verdict = OracleVerdict::unknown;
  std::vector<int> set;  // when found
};

// Exhaustive scan over all k-subsets for k <= exhaustive_k_limit (closed
// neighborhoods accumulated with set unions); randomized greedy beyond that,
// returning found-or-unknown.
DominationResult has_dominating_set_of_size(const Graph& g, int k,
                                            int exhaustive_k_limit = 3,
                                            std::uint64_t seed = 0,
                                            int random_budget = 2000);

// True when the set's closed neighborhoods cover the whole graph.
bool is_dominating_set(const Graph& g, const std::vector<int>& set);

}  // namespace spantree
