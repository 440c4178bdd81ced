#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "relcomm/tvg.hpp"

namespace relcomm {

// Collection of intermediate-node sets. Normalized on construction: each set
// sorted, sets deduplicated and ordered by (size, lexicographic).
struct PathSetCollection {
  std::vector<std::vector<NodeId>> sets;

  static PathSetCollection normalized(std::vector<std::vector<NodeId>> raw);
  bool contains(std::vector<NodeId> set) const;
  bool empty() const { return sets.empty(); }
  std::size_t size() const { return sets.size(); }
};

// Result of path-set enumeration. completion[i] is the earliest date at which
// some ordering of collection.sets[i] carries a message from source to target.
//
// The collection is the subset/time Pareto frontier of all realizable
// intermediate-node sets: a set is dropped only when a proper subset of it
// completes no later. Dropping such a set changes nothing downstream — every
// cut hitting the subset hits the superset, at every truncation date — while
// keeping supersets that complete strictly earlier, which time-truncated cut
// analysis does need.
struct PathSetEnumeration {
  PathSetCollection collection;
  std::vector<Timestamp> completion;
};

struct EnumerationOptions {
  std::size_t max_sets = 1'000'000;
  Timestamp start{0};
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(std::size_t partial, std::size_t cap)
      : std::runtime_error("path-set enumeration exceeded cap of " + std::to_string(cap) +
                           " sets"),
        partial_count(partial) {}
  std::size_t partial_count;
};

// True iff `nodes` are distinct and, for every consecutive pair, the edge
// exists, stays present through the latency window opened at the chosen send
// date, and the crossing finishes by the next date.
bool is_dynamic_path(const TimeVaryingGraph& g, const std::vector<NodeId>& nodes,
                     const std::vector<Timestamp>& dates);

// All realizable intermediate-node sets between p and q (Pareto frontier, see
// PathSetEnumeration), discovered by temporal DFS over (node, visited set,
// earliest arrival) states. The empty set appears iff a direct hop completes.
PathSetEnumeration enumerate_path_sets(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                       const EnumerationOptions& opts = {});

// Earliest date (within the horizon) by which a message leaving p no earlier
// than `start` reaches q while avoiding `excluded`; label-setting on earliest
// arrival times. Node distinctness is not tracked: with non-negative
// latencies an earliest-arrival journey never gains from revisiting a node.
std::optional<Timestamp> earliest_arrival(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                          Timestamp start, const std::vector<NodeId>& excluded);

// Maximum number of pairwise internally node-disjoint dynamic paths from p to
// q, by exhaustive search over the enumerated sets. Restricting the search to
// the Pareto frontier is exact: members of a disjoint family can always be
// replaced by subsets from the frontier.
int max_disjoint_paths(const TimeVaryingGraph& g, NodeId p, NodeId q);

// Smallest send date >= from at which edge d can be crossed: presence must
// hold through [t, t + latency(t)]. Shared by the enumeration, the arrival
// oracle, and the simulator's delivery rule.
std::optional<Timestamp> earliest_feasible_send(const TimeVaryingGraph::EdgeData& d,
                                                Timestamp from);

}  // namespace relcomm
