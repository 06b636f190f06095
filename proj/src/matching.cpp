#include "spantree/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "spantree/check.hpp"

namespace spantree {

namespace {

// Dinic on the standard network: source -> center (capacity = demand),
// center -> pool (effectively unbounded; flow through it is capped at one by
// the pool side anyway, and the large capacity keeps those arcs out of the
// min cut so the cut reads off a Hall violator directly), pool -> sink
// (capacity one).
class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

  void add_edge(int u, int v, long long cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], 0});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      it_ = head_;
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0)
        flow += f;
    }
    return flow;
  }

  // After max_flow: vertices reachable from s in the residual graph.
  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[v]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          q.push(edges_[e].to);
        }
      }
    }
    return seen;
  }

  // Flow pushed along the forward edge added k-th (0-based pair index).
  long long flow_on(int pair_index) const { return edges_[2 * pair_index + 1].cap; }

 private:
  struct Edge {
    int to;
    int next;
    long long cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[v]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
          level_[edges_[e].to] = level_[v] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] != -1;
  }

  long long dfs(int v, int t, long long limit) {
    if (v == t) return limit;
    for (int& e = it_[v]; e != -1; e = edges_[e].next) {
      Edge& ed = edges_[e];
      if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
        long long f = dfs(ed.to, t, std::min(limit, ed.cap));
        if (f > 0) {
          ed.cap -= f;
          edges_[e ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

StarMatchResult star_matching(const HallInstance& inst) {
  StarMatchResult res;
  long long total = 0;
  for (int d : inst.demand) {
    SPANTREE_CHECK(d >= 0, "star_matching: negative demand");
    total += d;
  }

  // node ids: 0 source, 1..a centers, a+1..a+b pool, a+b+1 sink
  int s = 0, t = inst.a + inst.b + 1;
  Dinic net(inst.a + inst.b + 2);
  const long long big = total + 1;
  int pair_index = 0;
  std::vector<int> center_edge(inst.a);
  std::vector<std::vector<std::pair<int, int>>> pool_edges(inst.a);  // (pair idx, b)
  for (int i = 0; i < inst.a; ++i) {
    net.add_edge(s, 1 + i, inst.demand[i]);
    center_edge[i] = pair_index++;
  }
  for (int i = 0; i < inst.a; ++i) {
    inst.adj[i].for_each([&](std::size_t bj) {
      net.add_edge(1 + i, 1 + inst.a + static_cast<int>(bj), big);
      pool_edges[i].push_back({pair_index++, static_cast<int>(bj)});
    });
  }
  for (int j = 0; j < inst.b; ++j) net.add_edge(1 + inst.a + j, t, 1);

  long long flow = net.max_flow(s, t);
  if (flow == total) {
    StarAssignment asg;
    asg.leaves.resize(inst.a);
    for (int i = 0; i < inst.a; ++i) {
      for (auto [pe, bj] : pool_edges[i]) {
        if (net.flow_on(pe) > 0) asg.leaves[i].push_back(bj);
      }
      SPANTREE_CHECK(static_cast<int>(asg.leaves[i].size()) == inst.demand[i],
                     "star_matching: flow decomposition mismatch");
    }
    res.assignment = std::move(asg);
    return res;
  }

  // Min cut: saturated source arcs leave S = reachable centers; pool arcs are
  // uncuttable, so N(S) lies inside the reachable pool side.
  std::vector<char> reach = net.residual_reachable(s);
  HallViolator viol;
  DynBitset nbhd(inst.b);
  for (int i = 0; i < inst.a; ++i) {
    if (reach[1 + i]) {
      viol.centers.push_back(i);
      viol.demand_sum += inst.demand[i];
      nbhd |= inst.adj[i];
    }
  }
  viol.neighborhood_size = static_cast<long long>(nbhd.count());
  SPANTREE_CHECK(!viol.centers.empty(),
                 "star_matching: infeasible but empty cut side");
  SPANTREE_CHECK(viol.neighborhood_size < viol.demand_sum,
                 "star_matching: extracted set is not a violator");
  res.violator = std::move(viol);
  return res;
}

PerfectMatchResult perfect_matching(const HallInstance& inst) {
  HallInstance unit = inst;
  std::fill(unit.demand.begin(), unit.demand.end(), 1);
  StarMatchResult sm = star_matching(unit);
  PerfectMatchResult res;
  if (sm.ok()) {
    std::vector<int> matched(inst.a);
    for (int i = 0; i < inst.a; ++i) matched[i] = sm.assignment->leaves[i][0];
    res.matched = std::move(matched);
  } else {
    res.violator = std::move(sm.violator);
  }
  return res;
}

std::string check_star_assignment(const HallInstance& inst,
                                  const StarAssignment& asg) {
  if (static_cast<int>(asg.leaves.size()) != inst.a)
    return "assignment has wrong center count";
  DynBitset used(inst.b);
  for (int i = 0; i < inst.a; ++i) {
    if (static_cast<int>(asg.leaves[i].size()) != inst.demand[i])
      return "center " + std::to_string(i) + " has wrong leaf count";
    for (int bj : asg.leaves[i]) {
      if (bj < 0 || bj >= inst.b) return "leaf out of range";
      if (!inst.adj[i].test(bj))
        return "assigned leaf not adjacent to its center";
      if (used.test(bj)) return "leaf used twice";
      used.set(bj);
    }
  }
  return "";
}

bool check_hall_violator(const HallInstance& inst, const HallViolator& v) {
  if (v.centers.empty()) return false;
  DynBitset nbhd(inst.b);
  long long demand = 0;
  for (int i : v.centers) {
    if (i < 0 || i >= inst.a) return false;
    nbhd |= inst.adj[i];
    demand += inst.demand[i];
  }
  return static_cast<long long>(nbhd.count()) < demand;
}

}  // namespace spantree
