#include "spantree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spantree/rng.hpp"

namespace spantree {

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop rejected");
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  adj_[u].set(v);
  adj_[v].set(u);
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int d = n_;
  for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

long long Graph::edge_count() const {
  long long twice = 0;
  for (int v = 0; v < n_; ++v) twice += degree(v);
  return twice / 2;
}

std::pair<Graph, std::vector<int>> Graph::induced(const DynBitset& verts) const {
  std::vector<int> map = verts.to_vector();
  Graph h(static_cast<int>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = i + 1; j < map.size(); ++j) {
      if (has_edge(map[i], map[j]))
        h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return {std::move(h), std::move(map)};
}

Graph gnp_sample(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gnp_sample: n >= 1 required");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("gnp_sample: p in [0,1] required");
  Graph g(n);
  Rng rng = Rng::stream(seed, 0x676e70 /* "gnp" */);
  if (p <= 0.0) return g;

  long long total = static_cast<long long>(n) * (n - 1) / 2;
  auto pair_of = [n](long long idx) {
    // row-major over u < v
    int u = 0;
    long long row = n - 1;
    while (idx >= row) {
      idx -= row;
      ++u;
      --row;
    }
    return std::pair<int, int>(u, u + 1 + static_cast<int>(idx));
  };

  if (p > 0.1) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p)) g.add_edge(u, v);
      }
    }
  } else {
    // geometric skipping: jump straight to the next present edge
    double log1mp = std::log1p(-p);
    long long idx = -1;
    for (;;) {
      double u = rng.unit();
      long long skip =
          1 + static_cast<long long>(std::floor(std::log1p(-u) / log1mp));
      if (skip <= 0) skip = 1;
      idx += skip;
      if (idx >= total) break;
      auto [a, b] = pair_of(idx);
      g.add_edge(a, b);
    }
  }
  return g;
}

Graph gnp_sample_min_degree(int n, double p, int min_deg_bound,
                            std::uint64_t seed, int max_tries) {
  std::uint64_t x = seed;
  for (int t = 0; t < max_tries; ++t) {
    std::uint64_t s = (t == 0) ? seed : splitmix64_next(x);
    Graph g = gnp_sample(n, p, s);
    if (g.min_degree() >= min_deg_bound) return g;
  }
  throw std::runtime_error("gnp_sample_min_degree: resample budget exhausted");
}

Graph dense_deficit_host(int n, int removal_cap, double expected_removal_degree,
                         std::uint64_t seed) {
  if (removal_cap < 0) removal_cap = 0;
  double p_rm = n > 1 ? expected_removal_degree / (n - 1) : 0.0;
  p_rm = std::clamp(p_rm, 0.0, 1.0);
  Graph removal = gnp_sample(n, p_rm, splitmix64_next(seed));

  // Trim vertices over the cap: drop their highest-id removal partners.
  std::vector<DynBitset> rm(n, DynBitset(n));
  for (int v = 0; v < n; ++v) rm[v] = removal.neighbors(v);
  for (int v = 0; v < n; ++v) {
    while (static_cast<int>(rm[v].count()) > removal_cap) {
      std::size_t last = DynBitset::npos;
      rm[v].for_each([&](std::size_t i) { last = i; });
      rm[v].reset(last);
      rm[last].reset(v);
    }
  }

  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!rm[u].test(v)) g.add_edge(u, v);
    }
  }
  return g;
}

namespace {

std::pair<int, long long> read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("edge list: missing header line");
  std::istringstream hs(line);
  int n;
  long long m;
  if (!(hs >> n >> m) || n < 0 || m < 0)
    throw std::runtime_error("edge list: bad header, expected \"n m\"");
  return {n, m};
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  auto [n, m] = read_header(in);
  Graph g(n);
  std::string line;
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("edge list: expected " + std::to_string(m) +
                               " edges, got " + std::to_string(i));
    std::istringstream es(line);
    int u, v;
    if (!(es >> u >> v))
      throw std::runtime_error("edge list: bad edge at line " +
                               std::to_string(i + 2));
    if (!(0 <= u && u < v && v < n))
      throw std::runtime_error("edge list: edge must satisfy 0 <= u < v < n "
                               "at line " + std::to_string(i + 2));
    if (g.has_edge(u, v))
      throw std::runtime_error("edge list: duplicate edge at line " +
                               std::to_string(i + 2));
    g.add_edge(u, v);
  }
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.size() << " " << g.edge_count() << "\n";
  for (int u = 0; u < g.size(); ++u) {
    g.neighbors(u).for_each([&](std::size_t v) {
      if (static_cast<int>(v) > u)
        out << u << " " << v << "\n";
    });
  }
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_edge_list(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace spantree
