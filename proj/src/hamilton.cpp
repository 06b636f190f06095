#include "spantree/hamilton.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "spantree/check.hpp"

namespace spantree {

namespace {

// Crossing closure: on a stuck path v0..vt (endpoint neighborhoods entirely on
// the path) with deg(v0)+deg(vt) > t there is an i with v0 ~ v[i+1] and
// vt ~ v[i]; reversing the tail at i closes a cycle on the path's vertices.
int crossing_index(const Graph& g, const std::vector<int>& path) {
  int t = static_cast<int>(path.size()) - 1;
  const DynBitset& n0 = g.neighbors(path[0]);
  const DynBitset& nt = g.neighbors(path[t]);
  for (int i = 0; i < t; ++i) {
    if (n0.test(path[i + 1]) && nt.test(path[i])) return i;
  }
  return -1;
}

[[noreturn]] void stall(const Graph& g) {
  int worst = 0;
  for (int v = 1; v < g.size(); ++v)
    if (g.degree(v) < g.degree(worst)) worst = v;
  if (2 * g.degree(worst) < g.size())
    throw std::invalid_argument(
        "hamilton: construction stalled; vertex " + std::to_string(worst) +
        " has degree " + std::to_string(g.degree(worst)) + " < n/2");
  throw std::runtime_error(
      "hamilton: construction stalled although the degree bound holds");
}

std::vector<int> close_to_cycle(const Graph& g, std::vector<int> path) {
  int t = static_cast<int>(path.size()) - 1;
  if (g.has_edge(path[0], path[t])) return path;
  int i = crossing_index(g, path);
  if (i < 0) stall(g);
  std::reverse(path.begin() + i + 1, path.end());
  return path;
}

}  // namespace

HamiltonCycle dirac_hamilton_cycle(const Graph& g) {
  int n = g.size();
  if (n < 3)
    throw std::invalid_argument("hamilton: need at least 3 vertices");

  DynBitset on_path(n);
  std::vector<int> path = {0};
  on_path.set(0);

  auto extend_ends = [&]() {
    for (;;) {
      bool grew = false;
      DynBitset free_nb = g.neighbors(path.back());
      free_nb -= on_path;
      std::size_t w = free_nb.find_first();
      if (w != DynBitset::npos) {
        path.push_back(static_cast<int>(w));
        on_path.set(w);
        grew = true;
      } else {
        free_nb = g.neighbors(path.front());
        free_nb -= on_path;
        w = free_nb.find_first();
        if (w != DynBitset::npos) {
          path.insert(path.begin(), static_cast<int>(w));
          on_path.set(w);
          grew = true;
        }
      }
      if (!grew) return;
    }
  };

  extend_ends();
  while (static_cast<int>(path.size()) < n) {
    // both ends stuck: close the current path into a cycle, then absorb an
    // outside vertex through any of its on-cycle neighbors
    std::vector<int> cyc = close_to_cycle(g, std::move(path));
    int m = static_cast<int>(cyc.size());
    int outside = -1, hook_pos = -1;
    for (int v = 0; v < n && outside < 0; ++v) {
      if (on_path.test(v)) continue;
      DynBitset cand = g.neighbors(v);
      cand &= on_path;
      std::size_t w = cand.find_first();
      if (w != DynBitset::npos) {
        outside = v;
        for (int j = 0; j < m; ++j) {
          if (cyc[j] == static_cast<int>(w)) {
            hook_pos = j;
            break;
          }
        }
      }
    }
    if (outside < 0) stall(g);
    // reopen: outside, cyc[hook], cyc[hook+1], ... wrapping all the way round
    path.clear();
    path.reserve(m + 1);
    path.push_back(outside);
    for (int j = 0; j < m; ++j) path.push_back(cyc[(hook_pos + j) % m]);
    on_path.set(outside);
    extend_ends();
  }

  HamiltonCycle cycle{close_to_cycle(g, std::move(path))};
  SPANTREE_CHECK(check_hamilton_cycle(g, cycle).empty(),
                 "hamilton: produced cycle failed validation");
  return cycle;
}

std::string check_hamilton_cycle(const Graph& g, const HamiltonCycle& c) {
  int n = g.size();
  if (static_cast<int>(c.order.size()) != n)
    return "cycle does not cover all vertices";
  std::vector<char> seen(n, 0);
  for (int v : c.order) {
    if (v < 0 || v >= n) return "vertex out of range";
    if (seen[v]) return "vertex repeated";
    seen[v] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (!g.has_edge(c.order[i], c.order[(i + 1) % n]))
      return "consecutive cycle vertices not adjacent";
  }
  return "";
}

}  // namespace spantree
