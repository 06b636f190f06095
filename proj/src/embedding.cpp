#include "spantree/embedding.hpp"

#include "spantree/check.hpp"

namespace spantree {

void Embedding::place(int tree_v, int graph_v) {
  SPANTREE_CHECK(psi_[tree_v] == -1, "embedding: tree vertex placed twice");
  SPANTREE_CHECK(inv_[graph_v] == -1, "embedding: graph vertex used twice");
  psi_[tree_v] = graph_v;
  inv_[graph_v] = tree_v;
  used_.set(graph_v);
  ++placed_;
}

void Embedding::unplace(int tree_v, int graph_v) {
  SPANTREE_CHECK(psi_[tree_v] == graph_v, "embedding: unplace mismatch");
  psi_[tree_v] = -1;
  inv_[graph_v] = -1;
  used_.reset(graph_v);
  --placed_;
}

VerifyResult verify_embedding(const Graph& g, const Tree& t, const Embedding& e,
                              bool require_total) {
  if (e.tree_size() != t.size() || e.graph_size() != g.size())
    return {false, "embedding sized for different graph/tree"};
  std::vector<char> hit(g.size(), 0);
  for (int tv = 0; tv < t.size(); ++tv) {
    if (!e.mapped(tv)) {
      if (require_total)
        return {false, "tree vertex " + std::to_string(tv) + " unmapped"};
      continue;
    }
    int gv = e.image(tv);
    if (gv < 0 || gv >= g.size())
      return {false, "image of " + std::to_string(tv) + " out of range"};
    if (hit[gv])
      return {false, "injectivity violated at graph vertex " + std::to_string(gv)};
    hit[gv] = 1;
  }
  for (auto [u, v] : t.edges()) {
    if (!e.mapped(u) || !e.mapped(v)) continue;
    if (!g.has_edge(e.image(u), e.image(v)))
      return {false, "tree edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") maps to a non-edge"};
  }
  return {true, ""};
}

}  // namespace spantree
