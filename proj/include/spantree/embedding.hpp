#pragma once

// Injective partial map from tree vertices to graph vertices, plus the
// validator every embedder's output is pushed through.

#include <string>
#include <vector>

#include "spantree/bitset.hpp"
#include "spantree/graph.hpp"
#include "spantree/tree.hpp"

namespace spantree {

class Embedding {
 public:
  Embedding() = default;
  Embedding(int n_tree, int n_graph)
      : psi_(n_tree, -1), inv_(n_graph, -1), used_(n_graph) {}

  void place(int tree_v, int graph_v);
  void unplace(int tree_v, int graph_v);  // backtracking support
  bool mapped(int tree_v) const { return psi_[tree_v] >= 0; }
  int image(int tree_v) const { return psi_[tree_v]; }
  int preimage(int graph_v) const { return inv_[graph_v]; }
  const DynBitset& used() const { return used_; }
  int placed() const { return placed_; }
  int tree_size() const { return static_cast<int>(psi_.size()); }
  int graph_size() const { return static_cast<int>(inv_.size()); }

 private:
  std::vector<int> psi_;
  std::vector<int> inv_;
  DynBitset used_;
  int placed_ = 0;
};

struct VerifyResult {
  bool ok = false;
  std::string violation;  // first violated constraint
};

// Checks totality (when required), injectivity, and edge preservation.
VerifyResult verify_embedding(const Graph& g, const Tree& t, const Embedding& e,
                              bool require_total = true);

}  // namespace spantree
