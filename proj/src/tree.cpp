#include "spantree/tree.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "spantree/check.hpp"
#include "spantree/graph.hpp"
#include "spantree/rng.hpp"

namespace spantree {

Tree::Tree(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
  if (n < 1) throw std::invalid_argument("tree: n >= 1 required");
  if (static_cast<int>(edges_.size()) != n - 1)
    throw std::invalid_argument("tree: exactly n-1 edges required");
  for (auto [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw std::invalid_argument("tree: bad edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  for (auto& a : adj_) {
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument("tree: duplicate edge");
  }
  // n-1 edges + connectivity = tree
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("tree: not connected");
}

int Tree::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Tree::has_edge(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<int> Tree::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (degree(v) == 1) out.push_back(v);
  return out;
}

// ---- Orderings --------------------------------------------------------------

LeftOrdering left_ordering(const Tree& t, int root, const DynBitset* excluded) {
  int n = t.size();
  auto included = [&](int v) { return excluded == nullptr || !excluded->test(v); };
  if (root < 0 || root >= n || !included(root))
    throw std::invalid_argument("left_ordering: root must be an included vertex");

  LeftOrdering lo;
  lo.pos_of.assign(n, -1);
  lo.order.reserve(n);
  lo.parent_pos.reserve(n);

  auto bfs_from = [&](int start) {
    std::queue<int> q;
    lo.pos_of[start] = static_cast<int>(lo.order.size());
    lo.order.push_back(start);
    lo.parent_pos.push_back(-1);
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : t.neighbors(v)) {  // ascending ids
        if (!included(w) || lo.pos_of[w] != -1) continue;
        lo.pos_of[w] = static_cast<int>(lo.order.size());
        lo.order.push_back(w);
        lo.parent_pos.push_back(lo.pos_of[v]);
        q.push(w);
      }
    }
  };

  bfs_from(root);
  for (int v = 0; v < n; ++v) {
    if (included(v) && lo.pos_of[v] == -1) bfs_from(v);
  }
  return lo;
}

// ---- Leaf / parent classification -------------------------------------------

LeafPartition classify_parents(const Tree& t, double threshold) {
  int n = t.size();
  LeafPartition lp;
  lp.threshold = threshold;
  lp.l_plus = DynBitset(n);
  lp.l_minus = DynBitset(n);
  lp.leaf_degree.assign(n, 0);

  std::vector<char> is_parent(n, 0);
  for (int v = 0; v < n; ++v) {
    if (t.degree(v) == 1) {
      lp.leaves.push_back(v);
      int p = t.neighbors(v)[0];
      lp.leaf_degree[p] += 1;
      is_parent[p] = 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!is_parent[v]) continue;
    lp.parents.push_back(v);
    bool heavy = static_cast<double>(lp.leaf_degree[v]) > threshold;
    (heavy ? lp.p_plus : lp.p_minus).push_back(v);
  }
  DynBitset heavy_set(n);
  for (int p : lp.p_plus) heavy_set.set(p);
  for (int v : lp.leaves) {
    int p = t.neighbors(v)[0];
    (heavy_set.test(p) ? lp.l_plus : lp.l_minus).set(v);
  }
  return lp;
}

// ---- Bare paths and the dichotomy -------------------------------------------

BarePathSet disjoint_bare_paths(const Tree& t, int length) {
  SPANTREE_CHECK(length >= 1, "bare path length must be >= 1");
  int n = t.size();
  BarePathSet out;
  out.length = length;
  if (n < 2) return out;

  // Stations are the vertices of degree != 2; every maximal bare path runs
  // station-to-station through degree-2 interiors. Each path is walked from
  // both ends, kept once via the station-id order.
  for (int s = 0; s < n; ++s) {
    if (t.degree(s) == 2) continue;
    for (int first : t.neighbors(s)) {
      std::vector<int> walk = {s, first};
      int prev = s, cur = first;
      while (t.degree(cur) == 2) {
        int nxt = t.neighbors(cur)[0] == prev ? t.neighbors(cur)[1]
                                              : t.neighbors(cur)[0];
        walk.push_back(nxt);
        prev = cur;
        cur = nxt;
      }
      if (s >= walk.back()) continue;

      // usable stretch: drop endpoints of degree >= 3 (shared with other
      // maximal paths), keep leaf endpoints (they belong to this path alone)
      std::size_t lo = t.degree(walk.front()) >= 3 ? 1 : 0;
      std::size_t hi = walk.size() - (t.degree(walk.back()) >= 3 ? 1 : 0);
      std::size_t usable = hi > lo ? hi - lo : 0;
      std::size_t block = static_cast<std::size_t>(length) + 1;
      for (std::size_t b = 0; b + block <= usable; b += block) {
        std::vector<int> seg(walk.begin() + lo + b, walk.begin() + lo + b + block);
        out.paths.push_back(std::move(seg));
      }
    }
  }
  return out;
}

std::string check_bare_paths(const Tree& t, const BarePathSet& s) {
  DynBitset used(t.size());
  for (const auto& p : s.paths) {
    if (static_cast<int>(p.size()) != s.length + 1)
      return "path has wrong vertex count";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (used.test(p[i])) return "paths not vertex-disjoint";
      used.set(p[i]);
      if (i > 0 && !t.has_edge(p[i - 1], p[i]))
        return "consecutive path vertices not adjacent in tree";
      if (i > 0 && i + 1 < p.size() && t.degree(p[i]) != 2)
        return "internal path vertex has degree != 2";
    }
  }
  return "";
}

Dichotomy dichotomy(const Tree& t, int k, int ell) {
  if (k < 1 || ell < 1)
    throw std::invalid_argument("dichotomy: k, ell >= 1 required");
  if (t.size() < 2)
    throw std::invalid_argument("dichotomy: tree with n >= 2 required");
  Dichotomy d;
  d.required_paths = static_cast<double>(t.size()) / (k + 1) - (2.0 * ell - 2.0);
  std::vector<int> lv = t.leaves();
  if (static_cast<int>(lv.size()) >= ell) {
    d.leaf_branch = true;
    d.leaf_witness = std::move(lv);
    return d;
  }
  d.leaf_branch = false;
  d.paths = disjoint_bare_paths(t, k);
  SPANTREE_CHECK(static_cast<double>(d.paths.paths.size()) >= d.required_paths,
                 "dichotomy: path branch fell short of its bound");
  return d;
}

// ---- Generators --------------------------------------------------------------

Tree path_tree(int n) {
  std::vector<std::pair<int, int>> e;
  e.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Tree(n, std::move(e));
}

Tree prufer_decode(int n, const std::vector<int>& seq) {
  if (n < 2) throw std::invalid_argument("prufer_decode: n >= 2 required");
  if (static_cast<int>(seq.size()) != n - 2)
    throw std::invalid_argument("prufer_decode: sequence length must be n-2");
  std::vector<int> deg(n, 1);
  for (int s : seq) {
    if (s < 0 || s >= n) throw std::invalid_argument("prufer_decode: entry out of range");
    deg[s] += 1;
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  // linear-time decode with a moving pointer over current leaves
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int s : seq) {
    edges.push_back({std::min(leaf, s), std::max(leaf, s)});
    if (--deg[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return Tree(n, std::move(edges));
}

std::optional<Tree> random_tree_bounded_degree(int n, int delta_max,
                                               std::uint64_t seed,
                                               int max_attempts) {
  if (n < 2) throw std::invalid_argument("random_tree: n >= 2 required");
  if (n == 2) {
    if (delta_max < 1) throw std::invalid_argument("random_tree: delta >= 1 for n=2");
    return Tree(2, {{0, 1}});
  }
  if (delta_max < 2 || delta_max > n - 1)
    throw std::invalid_argument("random_tree: 2 <= delta <= n-1 required");
  if (delta_max == 2) return path_tree(n);

  Rng rng = Rng::stream(seed, 0x74726565 /* "tree" */);
  std::vector<int> seq(n - 2);
  std::vector<int> occ(n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::fill(occ.begin(), occ.end(), 0);
    bool ok = true;
    for (int i = 0; i < n - 2; ++i) {
      int s = rng.below_int(n);
      seq[i] = s;
      if (++occ[s] + 1 > delta_max) {
        ok = false;  // degree = occurrences + 1
        break;
      }
    }
    if (ok) return prufer_decode(n, seq);
  }
  return std::nullopt;
}

Broom build_broom(int n, int delta_max) {
  if (n < 2) throw std::invalid_argument("broom: n >= 2 required");
  if (delta_max < 1 || delta_max > n - 1)
    throw std::invalid_argument("broom: 1 <= delta <= n-1 required");
  long long k = (static_cast<long long>(n) - 1 + delta_max - 1) / delta_max;
  if (k > delta_max)
    throw std::invalid_argument(
        "broom: infeasible, center degree k=ceil((n-1)/delta)=" +
        std::to_string(k) + " exceeds delta=" + std::to_string(delta_max));

  // center 0, core 1..k, leaves k+1..n-1 spread evenly over the core with a
  // per-core cap of delta-1 (the core vertex is also adjacent to the center)
  int kk = static_cast<int>(k);
  long long n_leaves = n - 1 - kk;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  std::vector<int> core;
  for (int i = 1; i <= kk; ++i) {
    edges.push_back({0, i});
    core.push_back(i);
  }
  int next = kk + 1;
  for (int i = 0; i < kk && n_leaves > 0; ++i) {
    long long take = (n_leaves + (kk - i) - 1) / (kk - i);  // even split, big first
    take = std::min<long long>(take, delta_max - 1);
    for (long long j = 0; j < take; ++j) {
      edges.push_back({core[i], next});
      ++next;
    }
    n_leaves -= take;
  }
  if (n_leaves > 0)
    throw std::invalid_argument(
        "broom: infeasible, k*(delta-1)=" + std::to_string(k * (delta_max - 1)) +
        " leaves capacity is below n-1-k=" + std::to_string(n - 1 - kk));

  Broom b{Tree(n, std::move(edges)), 0, std::move(core)};
  return b;
}

void enumerate_labeled_trees(int n, const std::function<void(const Tree&)>& fn) {
  if (n < 2 || n > 9)
    throw std::invalid_argument("enumerate_labeled_trees: 2 <= n <= 9 required");
  if (n == 2) {
    fn(Tree(2, {{0, 1}}));
    return;
  }
  std::vector<int> seq(n - 2, 0);
  for (;;) {
    fn(prufer_decode(n, seq));
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) {
      seq[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++seq[i];
  }
}

// ---- IO ----------------------------------------------------------------------

Tree read_tree(std::istream& in) {
  Graph g = read_edge_list(in);
  if (g.edge_count() != g.size() - 1)
    throw std::runtime_error("tree file: expected n-1 edges");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.size(); ++u) {
    g.neighbors(u).for_each([&](std::size_t v) {
      if (static_cast<int>(v) > u) edges.push_back({u, static_cast<int>(v)});
    });
  }
  return Tree(g.size(), std::move(edges));  // validates connectivity
}

void write_tree(const Tree& t, std::ostream& out) {
  std::vector<std::pair<int, int>> edges = t.edges();
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  out << t.size() << " " << edges.size() << "\n";
  for (auto [u, v] : edges) out << u << " " << v << "\n";
}

Tree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tree(in);
}

void write_tree_file(const Tree& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_tree(t, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace spantree
