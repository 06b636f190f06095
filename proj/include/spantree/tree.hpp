#pragma once

// Trees and the structural machinery the embedders consume: left orderings,
// leaf/parent classification, disjoint bare-path extraction and the
// leaves-or-bare-paths dichotomy, plus generators (Prufer sampling, the
// extremal broom).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spantree/bitset.hpp"

namespace spantree {

class Tree {
 public:
  // Validates connectivity and edge count; throws std::invalid_argument.
  Tree(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;

  // Degree-1 vertices, ascending.
  std::vector<int> leaves() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// ---- Orderings ------------------------------------------------------------

// BFS-consistent vertex order of a tree (or of the forest left after deleting
// `excluded`): the designated root comes first and every later vertex has
// exactly one neighbor before it. Extra components are rooted at their
// lowest-id vertex, ascending-id tie-breaks throughout.
struct LeftOrdering {
  std::vector<int> order;       // tree vertex per position
  std::vector<int> parent_pos;  // position of unique left neighbor, -1 = root
  std::vector<int> pos_of;      // tree vertex -> position, -1 if excluded
};

LeftOrdering left_ordering(const Tree& t, int root,
                           const DynBitset* excluded = nullptr);

// ---- Leaf / parent classification ------------------------------------------

struct LeafPartition {
  double threshold = 0.0;
  std::vector<int> leaves;        // L
  std::vector<int> parents;       // P
  std::vector<int> p_plus;        // parents with d(p, L) > threshold
  std::vector<int> p_minus;
  DynBitset l_plus;               // leaves attached to p_plus
  DynBitset l_minus;
  std::vector<int> leaf_degree;   // per vertex: d(v, L) (0 for non-parents)
};

LeafPartition classify_parents(const Tree& t, double threshold);

// ---- Bare paths and the dichotomy ------------------------------------------

// Vertex-disjoint paths of `length` edges whose internal vertices have degree
// exactly 2 in the owning tree.
struct BarePathSet {
  int length = 0;
  std::vector<std::vector<int>> paths;  // each has length+1 vertices
};

// Maximal collection found by chopping every maximal bare path: segments are
// taken from the stretch that excludes branch-vertex endpoints (degree >= 3)
// but may include leaf endpoints, so segments of distinct maximal paths never
// share a vertex.
BarePathSet disjoint_bare_paths(const Tree& t, int length);

// Recount: pairwise disjoint, correct length, internal degrees exactly 2,
// consecutive pairs are tree edges. Returns an error string or empty.
std::string check_bare_paths(const Tree& t, const BarePathSet& s);

// Either at least ell leaves, or at least n/(k+1) - (2*ell - 2) disjoint bare
// paths of length k. Never fails.
struct Dichotomy {
  bool leaf_branch = false;
  std::vector<int> leaf_witness;  // when leaf_branch
  BarePathSet paths;              // otherwise
  double required_paths = 0.0;    // n/(k+1) - (2*ell - 2), may be negative
};

Dichotomy dichotomy(const Tree& t, int k, int ell);

// ---- Generators -------------------------------------------------------------

Tree path_tree(int n);

// Decode a Prufer sequence (length n-2, entries in [0, n)) into a tree.
Tree prufer_decode(int n, const std::vector<int>& seq);

// Rejection-sampled uniform tree with max degree <= delta_max. Delta = 2
// returns the path directly (rejection is hopeless there). nullopt when the
// attempt budget runs out.
std::optional<Tree> random_tree_bounded_degree(int n, int delta_max,
                                               std::uint64_t seed,
                                               int max_attempts = 10000);

// Extremal broom: one center adjacent to a core X of ceil((n-1)/delta)
// vertices; every other vertex is a leaf hanging on X, distributed as evenly
// as possible with each core vertex capped at delta-1 leaves. X dominates the
// tree. Infeasible (n, delta) throw with the violated inequality.
struct Broom {
  Tree tree;
  int center = 0;
  std::vector<int> core;  // X
};

Broom build_broom(int n, int delta_max);

// All n^(n-2) labeled trees via Prufer decoding, streamed. n <= 9.
void enumerate_labeled_trees(int n, const std::function<void(const Tree&)>& fn);

// ---- Edge-list IO (same format as graphs, m = n-1 enforced) ----------------
Tree read_tree(std::istream& in);
void write_tree(const Tree& t, std::ostream& out);
Tree read_tree_file(const std::string& path);
void write_tree_file(const Tree& t, const std::string& path);

}  // namespace spantree
