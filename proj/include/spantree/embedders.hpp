#pragma once

// The constructive spanning-tree embedding procedures and the top-level
// degree-regime dispatch.
//
// Every success is pushed through verify_embedding before it is returned;
// failures are data (stage, diagnostics, Hall violators), never silent wrong
// answers. Randomized stages consume derived streams of the caller's seed, so
// outcomes depend only on (graph, tree, params, seed).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spantree/embedding.hpp"
#include "spantree/graph.hpp"
#include "spantree/matching.hpp"
#include "spantree/params.hpp"
#include "spantree/tree.hpp"

namespace spantree {

enum class EmbedError {
  none,
  precondition,       // stated hypotheses not met by the instance
  greedy_stall,       // empty candidate pool mid-embedding
  hall_violator,      // finishing star matching infeasible
  retries_exhausted,  // resample budget ran out
  clique_budget,      // dominating-clique search gave up
  predicate_failed,   // low-range feasibility inequality is false
};

const char* embed_error_name(EmbedError e);

struct EmbedOutcome {
  std::optional<Embedding> embedding;
  EmbedError error = EmbedError::none;
  std::string detail;
  int attempts = 1;
  std::optional<HallViolator> violator;

  bool ok() const { return embedding.has_value(); }
  static EmbedOutcome fail(EmbedError e, std::string d) {
    EmbedOutcome o;
    o.error = e;
    o.detail = std::move(d);
    return o;
  }
};

// Deletes the three interior vertices of 10m disjoint bare length-4 paths,
// embeds the rest greedily, covers the leftover with a Hamilton cycle and
// stitches the paths back through a perfect matching. strict=false drops the
// stated (m, path-count) coupling and instead uses every available path with
// the instance's true deficiency — the dispatch uses that as a best-effort
// rung (with zero paths it degenerates to the plain greedy, which is exactly
// what complete-ish hosts need).
EmbedOutcome embed_with_bare_paths(const Graph& g, const Tree& t, int m,
                                   std::uint64_t seed, bool strict = true);

// Random embedding of T - L along a left ordering, accepted only when every
// host vertex sees at least |L|/4 of leaf demand among its embedded parents;
// leaves finish through a degree-constrained star matching. strict=false
// skips the size/parent-cap gates (the spread check still decides).
EmbedOutcome embed_with_spread_leaves(const Graph& g, const Tree& t,
                                      const std::vector<int>& leaf_set, int m,
                                      int retries, std::uint64_t seed,
                                      bool strict = true);

struct DominatingCliqueResult {
  std::optional<std::vector<int>> clique;
  std::vector<int> best_attempt;  // best-coverage certificate on failure
  std::size_t best_covered = 0;
  int restarts_used = 0;
};

// Randomized greedy: seed vertex uniform, then repeatedly the common-neighbor
// candidate covering the most currently-undominated vertices (uniform among
// ties); domination checked, resampled within the restart budget.
DominatingCliqueResult find_dominating_clique(const Graph& g, int k, int budget,
                                              std::uint64_t seed);

// High range: bare-path route when the tree has Delta/100 disjoint bare
// length-4 paths, otherwise classify parents against the deficiency threshold
// and either spread the leaves (few heavy parents) or pin the heavy parents
// onto a dominating clique.
EmbedOutcome embed_high_range(const Graph& g, const Tree& t,
                              const RegimeParams& params, std::uint64_t seed,
                              int retries = 50, int clique_budget = 200);

// Low range: bare-path route, then the heavy-parent case split; the
// many-heavy case checks the feasibility inequality, samples the random
// landing sets R1/R2 until their adjacency properties hold, embeds with the
// three-way placement rule and finishes by star matching.
EmbedOutcome embed_low_range(const Graph& g, const Tree& t,
                             const RegimeParams& params, int retries,
                             std::uint64_t seed);

struct EmbedConfig {
  double eps = 1.0;
  double c_const = 0.0;  // <= 1 means auto: max(12, 2/eps)
  double mu = 0.0;       // outside (0,1) means auto: min(eps/10, 0.1)
  int retries = 50;
  int clique_budget = 200;
  bool use_oracle = true;
  int oracle_limit = 16;
  long long oracle_node_budget = 50'000'000;
};

struct StrategyAttempt {
  std::string strategy;
  bool success = false;
  EmbedError error = EmbedError::none;
  std::string detail;
  double elapsed_ms = 0.0;
  bool had_violator = false;
};

struct EmbedReport {
  std::vector<StrategyAttempt> attempts;
  bool success = false;
  bool certified_absent = false;  // only the exact oracle can set this
  std::string summary() const;
};

struct EmbedResult {
  EmbedOutcome outcome;
  EmbedReport report;
};

// Regime dispatch with fallback chain: primary regime, alternate regime,
// bare paths, spread leaves (each strict then best-effort), finally the exact
// oracle when the instance is small enough. Absence is only ever claimed when
// the oracle ran to completion.
EmbedResult embed_tree(const Graph& g, const Tree& t, const EmbedConfig& cfg,
                       std::uint64_t seed);

}  // namespace spantree
