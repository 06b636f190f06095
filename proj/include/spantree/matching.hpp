#pragma once

// Hall-type finishing steps: vertex-disjoint stars with prescribed demands
// and perfect matchings, solved by max flow. Infeasible instances yield a
// Hall violator extracted from the min cut instead of an error.

#include <optional>
#include <string>
#include <vector>

#include "spantree/bitset.hpp"

namespace spantree {

// Centers 0..a-1 with non-negative demands; pool 0..b-1; adjacency rows over
// the pool. Zero demands are allowed and produce empty stars.
struct HallInstance {
  int a = 0;
  int b = 0;
  std::vector<int> demand;
  std::vector<DynBitset> adj;

  HallInstance() = default;
  HallInstance(int a_, int b_) : a(a_), b(b_), demand(a_, 0), adj(a_, DynBitset(b_)) {}
};

struct StarAssignment {
  std::vector<std::vector<int>> leaves;  // per center, exactly demand[i] pool ids
};

// Witness S with |N(S)| < sum of demands over S.
struct HallViolator {
  std::vector<int> centers;
  long long demand_sum = 0;
  long long neighborhood_size = 0;
};

struct StarMatchResult {
  std::optional<StarAssignment> assignment;
  std::optional<HallViolator> violator;
  bool ok() const { return assignment.has_value(); }
};

StarMatchResult star_matching(const HallInstance& inst);

// All demands forced to one; matched[i] is the pool vertex of center i.
struct PerfectMatchResult {
  std::optional<std::vector<int>> matched;
  std::optional<HallViolator> violator;
  bool ok() const { return matched.has_value(); }
};

PerfectMatchResult perfect_matching(const HallInstance& inst);

// Independent validation (disjointness, adjacency, exact demands); returns an
// error string or empty.
std::string check_star_assignment(const HallInstance& inst,
                                  const StarAssignment& asg);

// Recount of a claimed violator; true iff it is a genuine Hall violation.
bool check_hall_violator(const HallInstance& inst, const HallViolator& v);

}  // namespace spantree
