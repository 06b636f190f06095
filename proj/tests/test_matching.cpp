#include "doctest.h"

#include <functional>

#include "spantree/matching.hpp"
#include "spantree/rng.hpp"

using namespace spantree;

namespace {

// Exhaustive feasibility: assign each center a demand-sized subset of its
// neighborhood, disjoint across centers. Memoized over (center, used-mask).
bool brute_force_feasible(const HallInstance& inst) {
  std::vector<unsigned> nbhd(inst.a, 0);
  for (int i = 0; i < inst.a; ++i)
    inst.adj[i].for_each([&](std::size_t b) { nbhd[i] |= 1u << b; });
  std::vector<std::vector<char>> memo(
      inst.a + 1, std::vector<char>(1u << inst.b, 0));  // 0 unknown 1 no 2 yes
  std::function<bool(int, unsigned)> go = [&](int i, unsigned used) -> bool {
    if (i == inst.a) return true;
    char& m = memo[i][used];
    if (m) return m == 2;
    unsigned avail = nbhd[i] & ~used;
    bool ok = false;
    int d = inst.demand[i];
    // enumerate d-subsets of avail
    std::function<void(unsigned, int, unsigned)> pick = [&](unsigned rest,
                                                            int need,
                                                            unsigned chosen) {
      if (ok) return;
      if (need == 0) {
        ok = go(i + 1, used | chosen);
        return;
      }
      if (__builtin_popcount(rest) < need) return;
      unsigned low = rest & (~rest + 1);
      pick(rest ^ low, need - 1, chosen | low);
      pick(rest ^ low, need, chosen);
    };
    pick(avail, d, 0);
    m = ok ? 2 : 1;
    return ok;
  };
  return go(0, 0);
}

HallInstance make(int a, int b, std::vector<int> demand,
                  std::vector<std::vector<int>> edges) {
  HallInstance inst(a, b);
  inst.demand = std::move(demand);
  for (int i = 0; i < a; ++i)
    for (int bj : edges[i]) inst.adj[i].set(bj);
  return inst;
}

}  // namespace

TEST_CASE("complete bipartite with demands summing to the pool") {
  HallInstance inst(3, 6);
  inst.demand = {2, 3, 1};
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 6; ++b) inst.adj[i].set(b);
  StarMatchResult r = star_matching(inst);
  REQUIRE(r.ok());
  CHECK(check_star_assignment(inst, *r.assignment).empty());
  DynBitset used(6);
  for (const auto& lv : r.assignment->leaves)
    for (int b : lv) used.set(b);
  CHECK(used.count() == 6);  // every pool vertex used
}

TEST_CASE("single center with excess demand yields the singleton violator") {
  HallInstance inst = make(1, 4, {3}, {{0, 1}});
  StarMatchResult r = star_matching(inst);
  REQUIRE(!r.ok());
  CHECK(r.violator->centers == std::vector<int>{0});
  CHECK(check_hall_violator(inst, *r.violator));
}

TEST_CASE("two centers over three pool vertices") {
  // centers: 0-{0,1}, 1-{1,2}, demands (2,1); forced split 0->{0,1}, 1->{2}
  HallInstance inst = make(2, 3, {2, 1}, {{0, 1}, {1, 2}});
  CHECK(brute_force_feasible(inst));
  StarMatchResult r = star_matching(inst);
  REQUIRE(r.ok());
  CHECK(check_star_assignment(inst, *r.assignment).empty());
  CHECK(r.assignment->leaves[0] == std::vector<int>{0, 1});
  CHECK(r.assignment->leaves[1] == std::vector<int>{2});
}

TEST_CASE("zero demands produce empty stars") {
  HallInstance inst = make(2, 2, {0, 2}, {{}, {0, 1}});
  StarMatchResult r = star_matching(inst);
  REQUIRE(r.ok());
  CHECK(r.assignment->leaves[0].empty());
  CHECK(r.assignment->leaves[1].size() == 2);
}

TEST_CASE("perfect matching identity and pigeonhole") {
  HallInstance ident(4, 4);
  ident.demand = {1, 1, 1, 1};
  for (int i = 0; i < 4; ++i) ident.adj[i].set(i);
  PerfectMatchResult r = perfect_matching(ident);
  REQUIRE(r.ok());
  CHECK(*r.matched == std::vector<int>{0, 1, 2, 3});

  HallInstance squeeze(3, 2);
  squeeze.demand = {1, 1, 1};
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 2; ++b) squeeze.adj[i].set(b);
  PerfectMatchResult r2 = perfect_matching(squeeze);
  REQUIRE(!r2.ok());
  CHECK(check_hall_violator(squeeze, *r2.violator));
}

TEST_CASE("random bipartite agreement with brute force") {
  Rng rng(101);
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    int a = 1 + rng.below_int(4);
    int b = 1 + rng.below_int(6);
    HallInstance inst(a, b);
    for (int i = 0; i < a; ++i) {
      inst.demand[i] = rng.below_int(4);
      for (int j = 0; j < b; ++j)
        if (rng.bernoulli(0.5)) inst.adj[i].set(j);
    }
    bool expect = brute_force_feasible(inst);
    StarMatchResult r = star_matching(inst);
    CHECK(r.ok() == expect);
    if (r.ok())
      CHECK(check_star_assignment(inst, *r.assignment).empty());
    else
      CHECK(check_hall_violator(inst, *r.violator));
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("perfect matching on random 10x10 agrees with brute force") {
  Rng rng(55);
  for (int it = 0; it < 60; ++it) {
    HallInstance inst(10, 10);
    for (int i = 0; i < 10; ++i) {
      inst.demand[i] = 1;
      for (int j = 0; j < 10; ++j)
        if (rng.bernoulli(0.5)) inst.adj[i].set(j);
    }
    // brute force via recursive matching search
    std::vector<int> match_b(10, -1);
    std::function<bool(int)> rec = [&](int i) -> bool {
      if (i == 10) return true;
      bool ok = false;
      inst.adj[i].for_each([&](std::size_t j) {
        if (ok || match_b[j] >= 0) return;
        match_b[j] = i;
        if (rec(i + 1)) ok = true;
        if (!ok) match_b[j] = -1;
      });
      return ok;
    };
    bool expect = rec(0);
    PerfectMatchResult r = perfect_matching(inst);
    CHECK(r.ok() == expect);
  }
}
