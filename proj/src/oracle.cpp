#include "spantree/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "spantree/check.hpp"
#include "spantree/rng.hpp"

namespace spantree {

namespace {

struct Backtracker {
  const Graph& g;
  const Tree& t;
  const LeftOrdering& lo;
  long long budget;
  bool reverse;
  long long nodes = 0;
  Embedding emb;
  std::vector<int> children_count;  // per ordering position
  bool out_of_budget = false;

  Backtracker(const Graph& g_, const Tree& t_, const LeftOrdering& lo_,
              long long budget_, bool reverse_)
      : g(g_), t(t_), lo(lo_), budget(budget_), reverse(reverse_),
        emb(t_.size(), g_.size()), children_count(lo_.order.size(), 0) {
    for (std::size_t i = 0; i < lo.order.size(); ++i) {
      if (lo.parent_pos[i] >= 0) ++children_count[lo.parent_pos[i]];
    }
  }

  bool solve(std::size_t pos) {
    if (pos == lo.order.size()) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    int tv = lo.order[pos];
    DynBitset pool(g.size());
    if (lo.parent_pos[pos] < 0) {
      pool.set_all();
    } else {
      pool = g.neighbors(emb.image(lo.order[lo.parent_pos[pos]]));
    }
    pool -= emb.used();

    const int need_children = children_count[pos];
    const int need_degree = t.degree(tv);
    std::vector<int> cands = pool.to_vector();
    if (reverse) std::reverse(cands.begin(), cands.end());
    for (int gv : cands) {
      if (g.degree(gv) < need_degree) continue;  // all tree neighbors must fit
      if (static_cast<int>(g.neighbors(gv).minus_count(emb.used())) <
          need_children)
        continue;
      emb.place(tv, gv);
      if (solve(pos + 1)) return true;
      if (out_of_budget) return false;
      emb.unplace(tv, gv);
    }
    return false;
  }
};

}  // namespace

ContainmentResult contains_spanning_tree(const Graph& g, const Tree& t,
                                         const ContainmentOptions& opt) {
  if (g.size() != t.size())
    throw std::invalid_argument("contains_spanning_tree: |G| != |T|");
  ContainmentResult res;

  // root at a max-degree vertex (degree pruning bites earliest there)
  int root = 0;
  for (int v = 1; v < t.size(); ++v) {
    bool better = opt.alternate_order ? t.degree(v) < t.degree(root)
                                      : t.degree(v) > t.degree(root);
    if (better) root = v;
  }
  LeftOrdering lo = left_ordering(t, root, nullptr);
  Backtracker bt(g, t, lo, opt.node_budget, opt.alternate_order);
  bool found = bt.solve(0);
  res.nodes_explored = bt.nodes;
  if (found) {
    res.verdict = OracleVerdict::found;
    VerifyResult vr = verify_embedding(g, t, bt.emb);
    SPANTREE_CHECK(vr.ok, "oracle produced an invalid embedding");
    res.embedding = std::move(bt.emb);
  } else if (bt.out_of_budget) {
    res.verdict = OracleVerdict::unknown;
  } else {
    res.verdict = OracleVerdict::absent;
  }
  return res;
}

DominationResult has_dominating_set_of_size(const Graph& g, int k,
                                            int exhaustive_k_limit,
                                            std::uint64_t seed,
                                            int random_budget) {
  const int n = g.size();
  DominationResult res;
  if (k < 0) throw std::invalid_argument("k >= 0 required");
  if (k == 0) {
    res.verdict = n == 0 ? OracleVerdict::found : OracleVerdict::absent;
    return res;
  }
  if (k >= n) {
    res.verdict = OracleVerdict::found;
    for (int v = 0; v < std::min(k, n); ++v) res.set.push_back(v);
    return res;
  }

  DynBitset full(n);
  full.set_all();
  auto closed = [&](int v) {
    DynBitset b = g.neighbors(v);
    b.set(v);
    return b;
  };

  // exhaustive subset scans are implemented for k <= 3 only; the limit
  // parameter can further restrict but never extend that
  if (k <= exhaustive_k_limit && k <= 3) {
    if (k == 1) {
      for (int v = 0; v < n; ++v) {
        if (closed(v) == full) {
          res.verdict = OracleVerdict::found;
          res.set = {v};
          return res;
        }
      }
      res.verdict = OracleVerdict::absent;
      return res;
    }
    if (k == 2) {
      std::vector<DynBitset> cl(n);
      for (int v = 0; v < n; ++v) cl[v] = closed(v);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (cl[u].covers_with(cl[v], full)) {
            res.verdict = OracleVerdict::found;
            res.set = {u, v};
            return res;
          }
        }
      }
      res.verdict = OracleVerdict::absent;
      return res;
    }
    // k == 3: pair scan with a pivot on the first uncovered vertex
    std::vector<DynBitset> cl(n);
    for (int v = 0; v < n; ++v) cl[v] = closed(v);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        DynBitset uv = cl[u];
        uv |= cl[v];
        DynBitset missing = full;
        missing -= uv;
        std::size_t pivot = missing.find_first();
        if (pivot == DynBitset::npos) {
          // pair already dominates; any third vertex works
          int w = 0;
          while (w == u || w == v) ++w;
          res.verdict = OracleVerdict::found;
          res.set = {u, v, w};
          return res;
        }
        // the third vertex must cover the pivot
        DynBitset cands = cl[pivot];
        bool hit = false;
        cands.for_each([&](std::size_t w) {
          if (hit || static_cast<int>(w) == u || static_cast<int>(w) == v)
            return;
          if (uv.covers_with(cl[w], full)) {
            res.verdict = OracleVerdict::found;
            res.set = {u, v, static_cast<int>(w)};
            hit = true;
          }
        });
        if (hit) return res;
      }
    }
    res.verdict = OracleVerdict::absent;
    return res;
  }

  // beyond exhaustive limits: randomized greedy, found-or-unknown
  for (int attempt = 0; attempt < random_budget; ++attempt) {
    Rng rng = Rng::stream(seed, 0x72646f6d /* "rdom" */, attempt);
    DynBitset dominated(n);
    std::vector<int> set;
    int start = static_cast<int>(rng.below(n));
    set.push_back(start);
    dominated |= closed(start);
    while (static_cast<int>(set.size()) < k && dominated != full) {
      int best = -1;
      std::size_t best_gain = 0;
      for (int v = 0; v < n; ++v) {
        std::size_t gain = closed(v).minus_count(dominated);
        if (gain > best_gain) {
          best_gain = gain;
          best = v;
        }
      }
      if (best < 0) break;
      set.push_back(best);
      dominated |= closed(best);
    }
    if (dominated == full) {
      while (static_cast<int>(set.size()) < k) {
        for (int v = 0; v < n; ++v) {
          if (std::find(set.begin(), set.end(), v) == set.end()) {
            set.push_back(v);
            break;
          }
        }
      }
      res.verdict = OracleVerdict::found;
      res.set = std::move(set);
      return res;
    }
  }
  res.verdict = OracleVerdict::unknown;
  return res;
}

bool is_dominating_set(const Graph& g, const std::vector<int>& set) {
  DynBitset covered(g.size());
  for (int v : set) {
    if (v < 0 || v >= g.size()) return false;
    covered |= g.neighbors(v);
    covered.set(v);
  }
  DynBitset full(g.size());
  full.set_all();
  return covered == full;
}

}  // namespace spantree
