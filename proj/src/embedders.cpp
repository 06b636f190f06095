#include "spantree/embedders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "spantree/check.hpp"
#include "spantree/hamilton.hpp"
#include "spantree/oracle.hpp"
#include "spantree/rng.hpp"

namespace spantree {

const char* embed_error_name(EmbedError e) {
  switch (e) {
    case EmbedError::none: return "none";
    case EmbedError::precondition: return "precondition";
    case EmbedError::greedy_stall: return "greedy_stall";
    case EmbedError::hall_violator: return "hall_violator";
    case EmbedError::retries_exhausted: return "retries_exhausted";
    case EmbedError::clique_budget: return "clique_budget";
    case EmbedError::predicate_failed: return "predicate_failed";
  }
  return "?";
}

namespace {

// Among eligible candidates, the one keeping the most free neighbors
// (max residual degree), ties to the lowest id. -1 when the pool is empty.
int pick_max_residual(const Graph& g, const DynBitset& pool,
                      const DynBitset& used) {
  int best = -1;
  std::size_t best_score = 0;
  pool.for_each([&](std::size_t c) {
    std::size_t score = g.neighbors(static_cast<int>(c)).minus_count(used);
    if (best < 0 || score > best_score) {
      best = static_cast<int>(c);
      best_score = score;
    }
  });
  return best;
}

DynBitset full_set(int n) {
  DynBitset b(n);
  b.set_all();
  return b;
}

std::string verify_or_throw(const Graph& g, const Tree& t, const Embedding& e) {
  VerifyResult vr = verify_embedding(g, t, e);
  SPANTREE_CHECK(vr.ok, "embedder produced an invalid embedding: " << vr.violation);
  return vr.violation;
}

}  // namespace

// ============================================================================
// Bare-path route
// ============================================================================

EmbedOutcome embed_with_bare_paths(const Graph& g, const Tree& t, int m,
                                   std::uint64_t seed, bool strict) {
  const int n = g.size();
  if (t.size() != n)
    return EmbedOutcome::fail(EmbedError::precondition, "|T| != |G|");
  const int delta = g.min_degree();
  const int m_true = n - delta;

  BarePathSet all_paths = disjoint_bare_paths(t, 4);
  const int avail = static_cast<int>(all_paths.paths.size());
  int ell;
  if (strict) {
    if (m * 100 > n)
      return EmbedOutcome::fail(EmbedError::precondition,
                                "m > n/100 (m=" + std::to_string(m) + ")");
    if (delta < n - m)
      return EmbedOutcome::fail(
          EmbedError::precondition,
          "min degree " + std::to_string(delta) + " < n - m");
    ell = 10 * m;
    if (avail < ell)
      return EmbedOutcome::fail(EmbedError::precondition,
                                "tree has " + std::to_string(avail) +
                                    " disjoint bare length-4 paths, needs " +
                                    std::to_string(ell));
  } else {
    // best effort: use every available path against the true deficiency
    m = m_true;
    ell = avail;
    if (ell == 0) {
      if (m_true > 1)
        return EmbedOutcome::fail(EmbedError::precondition,
                                  "no bare paths and host is not complete");
    } else if (3 * ell < 2 * m_true + 1) {
      return EmbedOutcome::fail(EmbedError::precondition,
                                "too few bare paths for the leftover to be "
                                "Dirac (3*" + std::to_string(ell) + " vs 2*" +
                                    std::to_string(m_true) + ")");
    }
  }
  std::vector<std::vector<int>> paths(all_paths.paths.begin(),
                                      all_paths.paths.begin() + ell);

  // delete the interior vertices, keep the endpoints
  DynBitset interior(n);
  for (const auto& p : paths)
    for (int j = 1; j <= 3; ++j) interior.set(p[j]);

  int root = 0;
  while (interior.test(root)) ++root;
  LeftOrdering lo = left_ordering(t, root, &interior);

  Embedding emb(n, n);
  const DynBitset full = full_set(n);
  (void)seed;  // the greedy is deterministic; the signature matches its peers
  for (std::size_t i = 0; i < lo.order.size(); ++i) {
    DynBitset pool = lo.parent_pos[i] < 0
                         ? full
                         : g.neighbors(emb.image(lo.order[lo.parent_pos[i]]));
    pool -= emb.used();
    SPANTREE_CHECK(static_cast<int>(pool.count()) >= delta - emb.placed(),
                   "bare-path greedy lost its feasibility margin");
    int pick = pick_max_residual(g, pool, emb.used());
    if (pick < 0)
      return EmbedOutcome::fail(EmbedError::greedy_stall,
                                "empty pool at tree vertex " +
                                    std::to_string(lo.order[i]));
    emb.place(lo.order[i], pick);
  }

  if (ell > 0) {
    DynBitset leftover = full;
    leftover -= emb.used();
    SPANTREE_CHECK(static_cast<int>(leftover.count()) == 3 * ell,
                   "leftover is not exactly the deleted interiors");
    auto [gprime, vmap] = g.induced(leftover);
    HamiltonCycle cyc;
    try {
      cyc = dirac_hamilton_cycle(gprime);
    } catch (const std::invalid_argument& ex) {
      return EmbedOutcome::fail(EmbedError::precondition,
                                std::string("leftover not Dirac: ") + ex.what());
    }
    // consecutive cycle triples x_j w_j y_j
    std::vector<int> xs(ell), ws(ell), ys(ell);
    for (int j = 0; j < ell; ++j) {
      xs[j] = vmap[cyc.order[3 * j]];
      ws[j] = vmap[cyc.order[3 * j + 1]];
      ys[j] = vmap[cyc.order[3 * j + 2]];
    }
    // auxiliary bipartite graph: i-j iff both endpoint images attach
    HallInstance inst(ell, ell);
    for (int i = 0; i < ell; ++i) {
      inst.demand[i] = 1;
      int ui = emb.image(paths[i].front());
      int vi = emb.image(paths[i].back());
      for (int j = 0; j < ell; ++j) {
        if (g.has_edge(ui, xs[j]) && g.has_edge(vi, ys[j])) inst.adj[i].set(j);
      }
    }
    PerfectMatchResult pm = perfect_matching(inst);
    if (!pm.ok()) {
      EmbedOutcome o = EmbedOutcome::fail(
          EmbedError::hall_violator,
          "no perfect matching when stitching the path interiors");
      o.violator = pm.violator;
      return o;
    }
    for (int i = 0; i < ell; ++i) {
      int j = (*pm.matched)[i];
      emb.place(paths[i][1], xs[j]);
      emb.place(paths[i][2], ws[j]);
      emb.place(paths[i][3], ys[j]);
    }
  }

  verify_or_throw(g, t, emb);
  EmbedOutcome out;
  out.embedding = std::move(emb);
  return out;
}

// ============================================================================
// Spread-leaves route
// ============================================================================

EmbedOutcome embed_with_spread_leaves(const Graph& g, const Tree& t,
                                      const std::vector<int>& leaf_set, int m,
                                      int retries, std::uint64_t seed,
                                      bool strict) {
  const int n = g.size();
  if (t.size() != n)
    return EmbedOutcome::fail(EmbedError::precondition, "|T| != |G|");
  if (leaf_set.empty())
    return EmbedOutcome::fail(EmbedError::precondition, "empty leaf set");
  for (int v : leaf_set) {
    if (v < 0 || v >= n || t.degree(v) != 1)
      return EmbedOutcome::fail(EmbedError::precondition,
                                "leaf set contains a non-leaf");
  }
  const int delta = g.min_degree();
  const std::size_t L = leaf_set.size();

  DynBitset leaf_bits(n);
  for (int v : leaf_set) leaf_bits.set(v);
  if (static_cast<int>(leaf_bits.count()) != static_cast<int>(L))
    return EmbedOutcome::fail(EmbedError::precondition, "duplicate leaves");

  // parents and their demands within the given leaf set
  std::vector<int> demand_of(n, 0);
  for (int v : leaf_set) demand_of[t.neighbors(v)[0]] += 1;

  if (strict) {
    if (m * 20 > n)
      return EmbedOutcome::fail(EmbedError::precondition, "m > n/20");
    if (delta < n - m)
      return EmbedOutcome::fail(EmbedError::precondition,
                                "min degree below n - m");
    if (L < 5 * static_cast<std::size_t>(m))
      return EmbedOutcome::fail(EmbedError::precondition, "|L| < 5m");
    double cap = static_cast<double>(L) / (10.0 * std::log(n));
    for (int p = 0; p < n; ++p) {
      if (demand_of[p] > cap)
        return EmbedOutcome::fail(
            EmbedError::precondition,
            "parent " + std::to_string(p) + " carries " +
                std::to_string(demand_of[p]) + " leaves > |L|/(10 log n) = " +
                std::to_string(cap));
    }
  }

  int root = -1;
  for (int p = 0; p < n && root < 0; ++p)
    if (demand_of[p] > 0 && !leaf_bits.test(p)) root = p;
  if (root < 0)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "every parent is itself in the leaf set");
  LeftOrdering lo = left_ordering(t, root, &leaf_bits);

  std::vector<int> parents;  // in ordering appearance
  for (int v : lo.order)
    if (demand_of[v] > 0) parents.push_back(v);

  const double spread_target = static_cast<double>(L) / 4.0;
  const DynBitset full = full_set(n);
  EmbedOutcome out;
  std::string worst_diag;
  int max_attempts = std::max(1, retries);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng = Rng::stream(seed, 0x73707264 /* "sprd" */, attempt);
    Embedding emb(n, n);
    for (std::size_t i = 0; i < lo.order.size(); ++i) {
      // root image uniform over the host, later ones uniform over
      // N(image of the left neighbor) minus used
      DynBitset pool = lo.parent_pos[i] < 0
                           ? full
                           : g.neighbors(emb.image(lo.order[lo.parent_pos[i]]));
      pool -= emb.used();
      if (pool.none()) {
        return EmbedOutcome::fail(EmbedError::greedy_stall,
                                  "candidate pool emptied; preconditions do "
                                  "not hold for this instance");
      }
      emb.place(lo.order[i], static_cast<int>(rng.pick(pool)));
    }

    // spread check: every host vertex must see |L|/4 of parent demand
    std::vector<long long> spread(n, 0);
    for (int p : parents) {
      g.neighbors(emb.image(p)).for_each(
          [&](std::size_t w) { spread[w] += demand_of[p]; });
    }
    int worst_w = 0;
    for (int w = 1; w < n; ++w)
      if (spread[w] < spread[worst_w]) worst_w = w;
    if (static_cast<double>(spread[worst_w]) < spread_target) {
      std::ostringstream oss;
      oss << "attempt " << attempt << ": worst vertex " << worst_w
          << " sees demand " << spread[worst_w] << " < " << spread_target;
      worst_diag = oss.str();
      continue;
    }

    // finish the leaves with a star matching into the free vertices
    DynBitset w_bits = full_set(n);
    w_bits -= emb.used();
    std::vector<int> w_list = w_bits.to_vector();
    SPANTREE_CHECK(w_list.size() == L, "free vertices != leaf count");
    std::vector<int> w_index(n, -1);
    for (std::size_t j = 0; j < w_list.size(); ++j) w_index[w_list[j]] = static_cast<int>(j);

    HallInstance inst(static_cast<int>(parents.size()),
                      static_cast<int>(w_list.size()));
    for (std::size_t i = 0; i < parents.size(); ++i) {
      inst.demand[i] = demand_of[parents[i]];
      DynBitset nb = g.neighbors(emb.image(parents[i]));
      nb &= w_bits;
      nb.for_each([&](std::size_t gw) { inst.adj[i].set(w_index[gw]); });
    }
    StarMatchResult sm = star_matching(inst);
    if (!sm.ok()) {
      out = EmbedOutcome::fail(EmbedError::hall_violator,
                               "leaf star matching infeasible");
      out.violator = sm.violator;
      out.attempts = attempt + 1;
      return out;
    }
    for (std::size_t i = 0; i < parents.size(); ++i) {
      // leaves of this parent in ascending order, matched pool ids as given
      std::vector<int> my_leaves;
      for (int v : t.neighbors(parents[i]))
        if (leaf_bits.test(v)) my_leaves.push_back(v);
      const auto& assigned = sm.assignment->leaves[i];
      SPANTREE_CHECK(my_leaves.size() == assigned.size(),
                     "assignment size mismatch");
      for (std::size_t j = 0; j < my_leaves.size(); ++j)
        emb.place(my_leaves[j], w_list[assigned[j]]);
    }
    verify_or_throw(g, t, emb);
    out.embedding = std::move(emb);
    out.attempts = attempt + 1;
    return out;
  }
  out = EmbedOutcome::fail(EmbedError::retries_exhausted,
                           "spread property never held: " + worst_diag);
  out.attempts = max_attempts;
  return out;
}

// ============================================================================
// Dominating clique search
// ============================================================================

DominatingCliqueResult find_dominating_clique(const Graph& g, int k, int budget,
                                              std::uint64_t seed) {
  const int n = g.size();
  DominatingCliqueResult res;
  if (k < 1 || k > n) return res;
  DynBitset closed(n);
  for (int restart = 0; restart < budget; ++restart) {
    res.restarts_used = restart + 1;
    Rng rng = Rng::stream(seed, 0x646f6d /* "dom" */, restart);
    std::vector<int> chosen = {static_cast<int>(rng.below(n))};
    DynBitset common = g.neighbors(chosen[0]);
    DynBitset dominated = g.neighbors(chosen[0]);
    dominated.set(chosen[0]);
    bool dead = false;
    for (int i = 1; i < k; ++i) {
      if (common.none()) {
        dead = true;
        break;
      }
      // candidates covering the most currently-undominated vertices
      std::size_t best_score = 0;
      std::vector<int> ties;
      common.for_each([&](std::size_t c) {
        std::size_t score =
            g.neighbors(static_cast<int>(c)).minus_count(dominated) +
            (dominated.test(c) ? 0 : 1);
        if (ties.empty() || score > best_score) {
          best_score = score;
          ties.clear();
          ties.push_back(static_cast<int>(c));
        } else if (score == best_score) {
          ties.push_back(static_cast<int>(c));
        }
      });
      int pick = ties[rng.below(ties.size())];
      chosen.push_back(pick);
      common &= g.neighbors(pick);
      common.reset(pick);
      dominated |= g.neighbors(pick);
      dominated.set(pick);
    }
    if (!dead) {
      std::size_t covered = dominated.count();
      if (covered == static_cast<std::size_t>(n)) {
        res.clique = std::move(chosen);
        return res;
      }
      if (covered > res.best_covered) {
        res.best_covered = covered;
        res.best_attempt = chosen;
      }
    }
  }
  return res;
}

// ============================================================================
// High range
// ============================================================================

EmbedOutcome embed_high_range(const Graph& g, const Tree& t,
                              const RegimeParams& params, std::uint64_t seed,
                              int retries, int clique_budget) {
  const int n = g.size();
  if (t.size() != n)
    return EmbedOutcome::fail(EmbedError::precondition, "|T| != |G|");
  if (params.regime != Regime::high)
    return EmbedOutcome::fail(EmbedError::precondition, "params not in high regime");
  if (t.max_degree() > params.delta_max)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "tree max degree exceeds params.delta_max");
  const double mbar = params.deficiency;
  const int delta_g = g.min_degree();
  if (static_cast<double>(delta_g) < n - mbar)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "min degree below n - deficiency threshold");
  const int k = static_cast<int>(params.k);
  const int m_deficit = std::max(1, n - delta_g);

  // many bare paths: hand over to the bare-path route
  BarePathSet bp = disjoint_bare_paths(t, 4);
  if (static_cast<double>(bp.paths.size()) >= params.delta_max / 100.0 &&
      static_cast<int>(bp.paths.size()) >= 10 * m_deficit && m_deficit * 100 <= n) {
    EmbedOutcome sub = embed_with_bare_paths(g, t, m_deficit, seed, true);
    if (sub.ok()) {
      sub.detail = "via bare paths";
      return sub;
    }
    // otherwise continue into the leaf analysis
  }

  LeafPartition lp = classify_parents(t, mbar);

  if (static_cast<int>(lp.p_plus.size()) <= k - 1) {
    // Case I: few heavy parents. Collect leaves of T - L+ that hang on light
    // parents and spread them.
    std::vector<int> suitable;
    for (int v = 0; v < n; ++v) {
      if (lp.l_plus.test(v)) continue;
      int deg_rem = 0;
      for (int w : t.neighbors(v))
        if (!lp.l_plus.test(w)) ++deg_rem;
      if (deg_rem == 1 && lp.l_minus.test(v)) suitable.push_back(v);
    }
    if (suitable.empty())
      return EmbedOutcome::fail(EmbedError::precondition,
                                "case I: no light-parent leaves to spread");
    EmbedOutcome sub = embed_with_spread_leaves(g, t, suitable, m_deficit,
                                                retries, seed, true);
    if (sub.ok()) sub.detail = "case I: " + sub.detail;
    else sub.detail = "case I: " + sub.detail;
    return sub;
  }

  // Case II: pin k heavy parents onto a dominating clique.
  // Rank heavy parents by first appearance in a BFS of the whole tree, take
  // the first k, then relabel along the final ordering.
  DynBitset heavy(n);
  for (int p : lp.p_plus) heavy.set(p);
  int root0 = lp.p_plus.front();
  LeftOrdering whole = left_ordering(t, root0, nullptr);
  std::vector<int> chosen;
  for (int v : whole.order) {
    if (heavy.test(v)) {
      chosen.push_back(v);
      if (static_cast<int>(chosen.size()) == k) break;
    }
  }
  SPANTREE_CHECK(static_cast<int>(chosen.size()) == k, "case II lost parents");

  DynBitset lprime(n);  // leaves of the chosen parents
  DynBitset chosen_bits(n);
  for (int p : chosen) chosen_bits.set(p);
  for (int v : lp.leaves)
    if (chosen_bits.test(t.neighbors(v)[0])) lprime.set(v);

  DominatingCliqueResult dc = find_dominating_clique(g, k, clique_budget, seed);
  if (!dc.clique) {
    EmbedOutcome o = EmbedOutcome::fail(
        EmbedError::clique_budget,
        "no dominating clique of size " + std::to_string(k) + " within " +
            std::to_string(clique_budget) + " restarts; best coverage " +
            std::to_string(dc.best_covered) + "/" + std::to_string(n));
    return o;
  }

  LeftOrdering lo = left_ordering(t, chosen[0], &lprime);
  std::sort(chosen.begin(), chosen.end(),
            [&](int a, int b) { return lo.pos_of[a] < lo.pos_of[b]; });
  std::vector<int> pin(n, -1);
  for (int i = 0; i < k; ++i) {
    SPANTREE_CHECK(lo.pos_of[chosen[i]] >= 0, "pinned parent excluded");
    pin[chosen[i]] = (*dc.clique)[i];
  }
  for (int i = 0; i < k; ++i)
    SPANTREE_CHECK(static_cast<double>(lp.leaf_degree[chosen[i]]) > mbar,
                   "chosen parent not actually heavy");

  // pinned children per ordering position, for the one-step lookahead
  std::vector<std::vector<int>> pinned_child_targets(lo.order.size());
  for (std::size_t i = 0; i < lo.order.size(); ++i) {
    if (lo.parent_pos[i] >= 0 && pin[lo.order[i]] >= 0)
      pinned_child_targets[lo.parent_pos[i]].push_back(pin[lo.order[i]]);
  }

  Embedding emb(n, n);
  DynBitset reserved(n);
  for (int v : *dc.clique) reserved.set(v);
  const DynBitset full = full_set(n);
  for (std::size_t i = 0; i < lo.order.size(); ++i) {
    int tv = lo.order[i];
    if (pin[tv] >= 0) {
      int target = pin[tv];
      if (lo.parent_pos[i] >= 0) {
        int u = emb.image(lo.order[lo.parent_pos[i]]);
        SPANTREE_CHECK(g.has_edge(u, target),
                       "lookahead failed to anchor a pinned parent");
      }
      reserved.reset(target);
      emb.place(tv, target);
      continue;
    }
    DynBitset pool = lo.parent_pos[i] < 0
                         ? full
                         : g.neighbors(emb.image(lo.order[lo.parent_pos[i]]));
    pool -= emb.used();
    pool -= reserved;
    for (int target : pinned_child_targets[i]) pool &= g.neighbors(target);
    int pick = pick_max_residual(g, pool, emb.used());
    if (pick < 0)
      return EmbedOutcome::fail(
          EmbedError::greedy_stall,
          "case II greedy stalled at tree vertex " + std::to_string(tv) +
              (pinned_child_targets[i].empty()
                   ? ""
                   : " (pool intersected with pinned neighborhoods)"));
    emb.place(tv, pick);
  }

  // Hall finish into the remaining vertices
  DynBitset w_bits = full;
  w_bits -= emb.used();
  std::vector<int> w_list = w_bits.to_vector();
  SPANTREE_CHECK(w_list.size() == lprime.count(),
                 "free vertex count != leaves of chosen parents");
  std::vector<int> w_index(n, -1);
  for (std::size_t j = 0; j < w_list.size(); ++j)
    w_index[w_list[j]] = static_cast<int>(j);

  HallInstance inst(k, static_cast<int>(w_list.size()));
  long long demand_total = 0;
  for (int i = 0; i < k; ++i) {
    inst.demand[i] = lp.leaf_degree[chosen[i]];
    demand_total += inst.demand[i];
    DynBitset nb = g.neighbors(emb.image(chosen[i]));
    nb &= w_bits;
    nb.for_each([&](std::size_t gw) { inst.adj[i].set(w_index[gw]); });
  }
  SPANTREE_CHECK(demand_total == static_cast<long long>(w_list.size()),
                 "full demand must saturate the free set exactly");
  StarMatchResult sm = star_matching(inst);
  if (!sm.ok()) {
    EmbedOutcome o = EmbedOutcome::fail(EmbedError::hall_violator,
                                        "case II leaf matching infeasible");
    o.violator = sm.violator;
    return o;
  }
  for (int i = 0; i < k; ++i) {
    std::vector<int> my_leaves;
    for (int v : t.neighbors(chosen[i]))
      if (lprime.test(v)) my_leaves.push_back(v);
    const auto& assigned = sm.assignment->leaves[i];
    SPANTREE_CHECK(my_leaves.size() == assigned.size(), "leaf count mismatch");
    for (std::size_t j = 0; j < my_leaves.size(); ++j)
      emb.place(my_leaves[j], w_list[assigned[j]]);
  }
  verify_or_throw(g, t, emb);
  EmbedOutcome out;
  out.embedding = std::move(emb);
  out.detail = "case II via dominating clique";
  return out;
}

// ============================================================================
// Low range
// ============================================================================

EmbedOutcome embed_low_range(const Graph& g, const Tree& t,
                             const RegimeParams& params, int retries,
                             std::uint64_t seed) {
  const int n = g.size();
  if (t.size() != n)
    return EmbedOutcome::fail(EmbedError::precondition, "|T| != |G|");
  if (params.regime != Regime::low)
    return EmbedOutcome::fail(EmbedError::precondition, "params not in low regime");
  if (t.max_degree() > params.delta_max)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "tree max degree exceeds params.delta_max");
  const double mbar = params.deficiency;
  const int delta_g = g.min_degree();
  if (static_cast<double>(delta_g) < n - mbar)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "min degree below n - deficiency threshold");
  const int kprime = params.k_prime;
  if (kprime < 1)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "k' = floor((1-mu)k) < 1");
  const int m_deficit = std::max(1, n - delta_g);

  // many bare paths route
  BarePathSet bp = disjoint_bare_paths(t, 4);
  if (static_cast<double>(bp.paths.size()) >= params.mu * n / 100.0) {
    int m_bp = std::max(1, static_cast<int>(std::floor(params.mu * n / 1000.0)));
    EmbedOutcome sub = embed_with_bare_paths(g, t, m_bp, seed, true);
    if (sub.ok()) {
      sub.detail = "via bare paths";
      return sub;
    }
  }

  const double tau = params.leaf_threshold_low;  // n / (C log n)
  LeafPartition lp = classify_parents(t, tau);

  if (static_cast<int>(lp.p_plus.size()) <= kprime) {
    // Case I: heavy parents are rare; spread the surviving light leaves.
    std::vector<int> suitable;
    for (int v = 0; v < n; ++v) {
      if (lp.l_plus.test(v)) continue;
      int deg_rem = 0;
      for (int w : t.neighbors(v))
        if (!lp.l_plus.test(w)) ++deg_rem;
      if (deg_rem == 1 && lp.l_minus.test(v)) suitable.push_back(v);
    }
    if (suitable.empty())
      return EmbedOutcome::fail(EmbedError::precondition,
                                "case I: no light-parent leaves to spread");
    EmbedOutcome sub = embed_with_spread_leaves(g, t, suitable, m_deficit,
                                                retries, seed, true);
    sub.detail = "case I: " + sub.detail;
    return sub;
  }

  // Case II: many heavy parents. First the feasibility inequality.
  const double lhs = params.eps * kprime * n /
                     (100.0 * params.c_const * std::log(n));
  if (lhs < mbar) {
    std::ostringstream oss;
    oss << "feasibility predicate false: eps*k'*n/(100*C*log n) = " << lhs
        << " < deficiency " << mbar << "; parameters outside the feasibility range";
    return EmbedOutcome::fail(EmbedError::predicate_failed, oss.str());
  }

  DynBitset heavy(n);
  for (int p : lp.p_plus) heavy.set(p);
  LeftOrdering whole = left_ordering(t, lp.p_plus.front(), nullptr);
  std::vector<int> chosen;
  for (int v : whole.order) {
    if (heavy.test(v)) {
      chosen.push_back(v);
      if (static_cast<int>(chosen.size()) == kprime) break;
    }
  }

  DynBitset lplus_bits(n);  // leaves of the chosen heavy parents
  DynBitset chosen_bits(n);
  for (int p : chosen) chosen_bits.set(p);
  for (int v : lp.leaves)
    if (chosen_bits.test(t.neighbors(v)[0])) lplus_bits.set(v);

  LeftOrdering lo = left_ordering(t, chosen[0], &lplus_bits);
  std::sort(chosen.begin(), chosen.end(),
            [&](int a, int b) { return lo.pos_of[a] < lo.pos_of[b]; });

  // Q: unique left neighbors of the chosen heavy parents
  DynBitset q_bits(n);
  for (int p : chosen) {
    int pp = lo.parent_pos[lo.pos_of[p]];
    if (pp >= 0) q_bits.set(lo.order[pp]);
  }
  SPANTREE_CHECK(q_bits.count() <= static_cast<std::size_t>(kprime),
                 "more unique left neighbors than heavy parents");

  const int r2_size = static_cast<int>(
      std::ceil(std::pow(n, params.eps / 100.0)));
  if (kprime + r2_size > n)
    return EmbedOutcome::fail(EmbedError::precondition,
                              "R1 and R2 do not fit in the host");

  // sample R1, R2 until the three adjacency properties hold
  DynBitset r1(n), r2(n);
  bool accepted = false;
  int attempts_used = 0;
  std::string sample_diag;
  const double need1 = params.eps * kprime / 10.0;
  const double slack2 = params.eps * kprime / 20.0;
  const double slack3 = r2_size / 2.0;
  for (int attempt = 0; attempt < std::max(1, retries); ++attempt) {
    attempts_used = attempt + 1;
    Rng rng = Rng::stream(seed, 0x6c6f77 /* "low" */, attempt);
    std::vector<int> perm = rng.sample_distinct(n, kprime + r2_size);
    r1.reset_all();
    r2.reset_all();
    for (int i = 0; i < kprime; ++i) r1.set(perm[i]);
    for (int i = 0; i < r2_size; ++i) r2.set(perm[kprime + i]);

    bool ok = true;
    double worst = 0.0;
    const char* which = "";
    for (int v = 0; v < n && ok; ++v) {
      // adjacency into R1 for everyone
      std::size_t a1 = g.neighbors(v).intersect_count(r1);
      if (static_cast<double>(a1) < need1) {
        ok = false;
        which = "R1 adjacency";
        worst = static_cast<double>(a1);
        break;
      }
      // non-neighbors (excluding v itself) within R1 for v in R1 u R2
      if (r1.test(v) || r2.test(v)) {
        std::size_t x_v = r1.minus_count(g.neighbors(v)) - (r1.test(v) ? 1 : 0);
        if (static_cast<double>(x_v) > slack2) {
          ok = false;
          which = "R1 non-neighbors";
          worst = static_cast<double>(x_v);
          break;
        }
      }
      // non-neighbors within R2 for everyone
      std::size_t y_v = r2.minus_count(g.neighbors(v)) - (r2.test(v) ? 1 : 0);
      if (static_cast<double>(y_v) > slack3) {
        ok = false;
        which = "R2 non-neighbors";
        worst = static_cast<double>(y_v);
        break;
      }
    }
    if (ok) {
      accepted = true;
      break;
    }
    std::ostringstream oss;
    oss << "attempt " << attempt << " rejected on " << which << " (" << worst
        << ")";
    sample_diag = oss.str();
  }
  if (!accepted) {
    EmbedOutcome o = EmbedOutcome::fail(
        EmbedError::retries_exhausted,
        "no acceptable (R1, R2) sample in " + std::to_string(attempts_used) +
            " attempts; last: " + sample_diag);
    o.attempts = attempts_used;
    return o;
  }

  DynBitset r12 = r1;
  r12 |= r2;

  // embed T - L+ with the three-way placement rule
  Rng rng = Rng::stream(seed, 0x706c6163 /* "plac" */, attempts_used);
  Embedding emb(n, n);
  emb.place(chosen[0], static_cast<int>(rng.pick(r1)));
  for (std::size_t i = 1; i < lo.order.size(); ++i) {
    int tv = lo.order[i];
    SPANTREE_CHECK(lo.parent_pos[i] >= 0, "T - L+ must stay connected");
    int u = emb.image(lo.order[lo.parent_pos[i]]);
    DynBitset pool(n);
    if (chosen_bits.test(tv)) {
      pool = g.neighbors(u);
      pool &= r1;
      pool -= emb.used();
      if (pool.none()) {
        pool = g.neighbors(u);
        pool -= emb.used();
        pool -= r12;
      }
    } else if (q_bits.test(tv)) {
      pool = g.neighbors(u);
      pool &= r2;
      pool -= emb.used();
    } else {
      pool = g.neighbors(u);
      pool -= emb.used();
      pool -= r12;
    }
    int pick = pick_max_residual(g, pool, emb.used());
    if (pick < 0)
      return EmbedOutcome::fail(
          EmbedError::greedy_stall,
          "three-way placement stalled at tree vertex " + std::to_string(tv));
    emb.place(tv, pick);
  }

  // placement discipline: R1 holds only heavy parents, R2 only their left
  // neighbors (during this phase)
  std::size_t in_r1 = 0;
  for (int v = 0; v < n; ++v) {
    if (!emb.used().test(v)) continue;
    int tv = emb.preimage(v);
    if (r1.test(v)) {
      SPANTREE_CHECK(chosen_bits.test(tv), "non-heavy image landed in R1");
      ++in_r1;
    }
    if (r2.test(v))
      SPANTREE_CHECK(q_bits.test(tv), "image in R2 is not a left neighbor");
  }
  // with accepted samples, at most one heavy parent can miss R1 shy of the
  // (1 - eps/20)k' mark (the parent image may itself sit in R1)
  double guaranteed = std::min<double>(
      kprime, std::ceil((1.0 - params.eps / 20.0) * kprime) - 1.0);
  SPANTREE_CHECK(static_cast<double>(in_r1) >= guaranteed,
                 "too few heavy parents landed in R1");

  // leaves of heavy parents that missed R1 are embedded greedily
  std::vector<int> p_prime;
  DynBitset lprime(n);
  for (int p : chosen) {
    if (r1.test(emb.image(p))) {
      p_prime.push_back(p);
      for (int v : t.neighbors(p))
        if (lplus_bits.test(v)) lprime.set(v);
    }
  }
  for (int p : chosen) {
    if (r1.test(emb.image(p))) continue;
    for (int v : t.neighbors(p)) {
      if (!lplus_bits.test(v)) continue;
      DynBitset pool = g.neighbors(emb.image(p));
      pool -= emb.used();
      int pick = pick_max_residual(g, pool, emb.used());
      if (pick < 0)
        return EmbedOutcome::fail(EmbedError::greedy_stall,
                                  "greedy stalled on leaves of a heavy parent "
                                  "outside R1");
      emb.place(v, pick);
    }
  }

  // Hall finish for the leaves of R1-placed parents
  DynBitset w_bits = full_set(n);
  w_bits -= emb.used();
  std::vector<int> w_list = w_bits.to_vector();
  SPANTREE_CHECK(w_list.size() == lprime.count(),
                 "free vertices != leaves awaiting the matching");
  std::vector<int> w_index(n, -1);
  for (std::size_t j = 0; j < w_list.size(); ++j)
    w_index[w_list[j]] = static_cast<int>(j);
  HallInstance inst(static_cast<int>(p_prime.size()),
                    static_cast<int>(w_list.size()));
  for (std::size_t i = 0; i < p_prime.size(); ++i) {
    int cnt = 0;
    for (int v : t.neighbors(p_prime[i]))
      if (lprime.test(v)) ++cnt;
    inst.demand[i] = cnt;
    DynBitset nb = g.neighbors(emb.image(p_prime[i]));
    nb &= w_bits;
    nb.for_each([&](std::size_t gw) { inst.adj[i].set(w_index[gw]); });
  }
  StarMatchResult sm = star_matching(inst);
  if (!sm.ok()) {
    EmbedOutcome o = EmbedOutcome::fail(EmbedError::hall_violator,
                                        "low-range leaf matching infeasible");
    o.violator = sm.violator;
    o.attempts = attempts_used;
    return o;
  }
  for (std::size_t i = 0; i < p_prime.size(); ++i) {
    std::vector<int> my_leaves;
    for (int v : t.neighbors(p_prime[i]))
      if (lprime.test(v)) my_leaves.push_back(v);
    const auto& assigned = sm.assignment->leaves[i];
    SPANTREE_CHECK(my_leaves.size() == assigned.size(), "leaf count mismatch");
    for (std::size_t j = 0; j < my_leaves.size(); ++j)
      emb.place(my_leaves[j], w_list[assigned[j]]);
  }
  verify_or_throw(g, t, emb);
  EmbedOutcome out;
  out.embedding = std::move(emb);
  out.attempts = attempts_used;
  out.detail = "case II via R1/R2 sampling";
  return out;
}

// ============================================================================
// Dispatch
// ============================================================================

namespace {

std::optional<RegimeParams> try_params(int n, int delta, double eps, double c,
                                       double mu, Regime r) {
  try {
    return regime_params(n, delta, eps, c, mu, r);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Leaves attached to parents light enough for the spread route.
std::vector<int> auto_spread_leaves(const Tree& t) {
  std::vector<int> all = t.leaves();
  if (all.empty() || t.size() < 3) return {};
  double cap = static_cast<double>(all.size()) / (10.0 * std::log(t.size()));
  std::vector<int> demand(t.size(), 0);
  for (int v : all) demand[t.neighbors(v)[0]] += 1;
  std::vector<int> kept;
  for (int v : all)
    if (demand[t.neighbors(v)[0]] <= cap) kept.push_back(v);
  return kept;
}

}  // namespace

std::string EmbedReport::summary() const {
  std::ostringstream oss;
  for (const auto& a : attempts) {
    oss << a.strategy << ": "
        << (a.success ? "success" : embed_error_name(a.error));
    if (!a.detail.empty()) oss << " (" << a.detail << ")";
    oss << "; ";
  }
  if (certified_absent) oss << "oracle certified absence";
  return oss.str();
}

EmbedResult embed_tree(const Graph& g, const Tree& t, const EmbedConfig& cfg,
                       std::uint64_t seed) {
  EmbedResult res;
  if (t.size() != g.size()) {
    res.outcome = EmbedOutcome::fail(EmbedError::precondition, "|T| != |G|");
    return res;
  }
  const int n = g.size();
  const double eps = cfg.eps;
  const double c = cfg.c_const > 1.0 ? cfg.c_const : std::max(12.0, 2.0 / eps);
  const double mu = (cfg.mu > 0.0 && cfg.mu < 1.0)
                        ? cfg.mu
                        : std::min(eps / 10.0, 0.1);
  const int delta_t = t.max_degree();
  const int m_true = std::max(1, n - g.min_degree());

  auto run = [&](const std::string& name, auto&& fn) -> bool {
    auto start = std::chrono::steady_clock::now();
    EmbedOutcome out = fn();
    auto stop = std::chrono::steady_clock::now();
    StrategyAttempt at;
    at.strategy = name;
    at.success = out.ok();
    at.error = out.error;
    at.detail = out.detail;
    at.had_violator = out.violator.has_value();
    at.elapsed_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    res.report.attempts.push_back(std::move(at));
    if (out.ok()) {
      res.outcome = std::move(out);
      res.report.success = true;
      return true;
    }
    return false;
  };

  std::optional<RegimeParams> high, low;
  bool high_first = false;
  if (n >= 3 && delta_t >= 1) {
    high = try_params(n, delta_t, eps, c, mu, Regime::high);
    low = try_params(n, delta_t, eps, c, mu, Regime::low);
    double log_n = std::log(n);
    double loglog = std::log(log_n);
    high_first = static_cast<double>(delta_t) >= 2.0 * n * loglog / log_n;
  }

  auto try_high = [&]() {
    return high && run("high_range", [&] {
             return embed_high_range(g, t, *high, Rng::stream(seed, 1).next(),
                                     cfg.retries, cfg.clique_budget);
           });
  };
  auto try_low = [&]() {
    return low && run("low_range", [&] {
             return embed_low_range(g, t, *low, cfg.retries,
                                    Rng::stream(seed, 2).next());
           });
  };

  bool done = high_first ? (try_high() || try_low()) : (try_low() || try_high());

  if (!done)
    done = run("bare_paths", [&] {
      return embed_with_bare_paths(g, t, m_true, Rng::stream(seed, 3).next(),
                                   true);
    });
  if (!done)
    done = run("spread_leaves", [&] {
      std::vector<int> leaves = auto_spread_leaves(t);
      if (leaves.empty())
        return EmbedOutcome::fail(EmbedError::precondition,
                                  "no light-parent leaves");
      return embed_with_spread_leaves(g, t, leaves, m_true, cfg.retries,
                                      Rng::stream(seed, 4).next(), true);
    });
  // best-effort reruns of the two direct routes
  if (!done)
    done = run("bare_paths[best-effort]", [&] {
      return embed_with_bare_paths(g, t, m_true, Rng::stream(seed, 5).next(),
                                   false);
    });
  if (!done)
    done = run("spread_leaves[best-effort]", [&] {
      std::vector<int> leaves = t.leaves();
      if (leaves.empty())
        return EmbedOutcome::fail(EmbedError::precondition, "tree has no leaves");
      return embed_with_spread_leaves(g, t, leaves, m_true, cfg.retries,
                                      Rng::stream(seed, 6).next(), false);
    });

  if (!done && cfg.use_oracle && n <= cfg.oracle_limit) {
    auto start = std::chrono::steady_clock::now();
    ContainmentOptions copt;
    copt.node_budget = cfg.oracle_node_budget;
    ContainmentResult cr = contains_spanning_tree(g, t, copt);
    auto stop = std::chrono::steady_clock::now();
    StrategyAttempt at;
    at.strategy = "fallback_oracle";
    at.elapsed_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    if (cr.verdict == OracleVerdict::found) {
      at.success = true;
      res.outcome.embedding = std::move(cr.embedding);
      res.report.success = true;
      done = true;
    } else if (cr.verdict == OracleVerdict::absent) {
      at.error = EmbedError::precondition;
      at.detail = "exhaustive search: no copy exists";
      res.report.certified_absent = true;
    } else {
      at.error = EmbedError::retries_exhausted;
      at.detail = "oracle node budget exhausted";
    }
    res.report.attempts.push_back(std::move(at));
  }

  if (!done && !res.report.success) {
    res.outcome = EmbedOutcome::fail(
        EmbedError::retries_exhausted,
        res.report.certified_absent ? "no copy exists (oracle-certified)"
                                    : "all strategies failed; containment "
                                      "undecided");
  }
  return res;
}

}  // namespace spantree
