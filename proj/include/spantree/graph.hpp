#pragma once

// Undirected simple graph on vertices 0..n-1 with bitset adjacency rows.
// Immutable by convention after construction; safe to share across threads.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spantree/bitset.hpp"

namespace spantree {

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n, DynBitset(n)) {}

  int size() const { return n_; }

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[u].test(v); }

  const DynBitset& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].count()); }

  int min_degree() const;
  long long edge_count() const;

  // Induced subgraph on the given vertex set; vertices[i] in the subgraph
  // corresponds to the returned mapping's i-th entry in the original graph.
  std::pair<Graph, std::vector<int>> induced(const DynBitset& verts) const;

 private:
  int n_ = 0;
  std::vector<DynBitset> adj_;
};

// G(n,p) with a fixed seed: per-pair coin flips for p > 0.1, geometric
// edge skipping for sparse p. Deterministic for a fixed seed.
Graph gnp_sample(int n, double p, std::uint64_t seed);

// Resamples G(n,p) until min_degree >= min_deg_bound; throws after max_tries.
Graph gnp_sample_min_degree(int n, double p, int min_deg_bound,
                            std::uint64_t seed, int max_tries = 1000);

// Complete graph minus a random subgraph whose max degree is capped at
// removal_cap; expected_removal_degree tunes the density of the removed
// subgraph (it is trimmed, never extended, so the cap is a hard bound).
Graph dense_deficit_host(int n, int removal_cap, double expected_removal_degree,
                         std::uint64_t seed);

// ---- Edge-list text format: "n m" then m lines "u v" with 0 <= u < v < n.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace spantree
