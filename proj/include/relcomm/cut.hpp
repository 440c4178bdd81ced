#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "relcomm/temporal_paths.hpp"
#include "relcomm/tvg.hpp"

namespace relcomm {

// Size of a minimum hitting set. Infinite exactly when the collection contains
// the empty set, which no cut can hit.
struct CutSize {
  bool infinite = false;
  std::size_t value = 0;

  static CutSize finite(std::size_t v) { return {false, v}; }
  static CutSize unbounded() { return {true, 0}; }

  bool exceeds(std::size_t k) const { return infinite || value > k; }
  bool operator==(const CutSize&) const = default;
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

// True iff c intersects every set in omega (vacuously true when omega has no
// sets).
bool is_cut(const PathSetCollection& omega, const std::vector<NodeId>& c);

// Exact minimum hitting-set size by branch and bound: dominated supersets are
// removed up front, branching picks the smallest unhit set with elements in
// NodeId order, and a disjoint-set lower bound prunes. Worst case exponential;
// instances here are desk scale.
CutSize min_cut(const PathSetCollection& omega);

struct MinCutWitness {
  CutSize size;
  std::vector<NodeId> cut;  // sorted; empty and meaningless when size is infinite
};
MinCutWitness min_cut_with_witness(const PathSetCollection& omega);

// Decision form, true iff min_cut(omega) > k. Runs the search capped at depth
// k instead of computing the exact value; this is the hot path of the accept
// rule.
bool min_cut_exceeds(const PathSetCollection& omega, std::size_t k);

// Minimum number of nodes whose removal severs every dynamic path from p to q.
// Two independent algorithms, cross-checked in tests:
//   dyn_min_cut            — hitting set over the enumerated path sets
//   dyn_min_cut_by_removal — cardinality-increasing subset search using the
//                            earliest-arrival oracle
CutSize dyn_min_cut(const TimeVaryingGraph& g, NodeId p, NodeId q);
CutSize dyn_min_cut_by_removal(const TimeVaryingGraph& g, NodeId p, NodeId q);

// Feasibility predicates for tolerating up to k Byzantine nodes.
bool feasible_noncrypto(const TimeVaryingGraph& g, NodeId p, NodeId q, std::size_t k);
bool feasible_crypto(const TimeVaryingGraph& g, NodeId p, NodeId q, std::size_t k);

enum class ConditionMode { direct, noncrypto, crypto };

const char* to_string(ConditionMode m);
std::optional<ConditionMode> condition_mode_from_string(const std::string& s);

// Smallest date t at which the graph truncated to [start, t] satisfies the
// mode's condition for the pair (p, q):
//   direct     — a relay-free dynamic path has delivered by t
//   noncrypto  — the truncation's dynamic min cut exceeds 2k
//   crypto     — it exceeds k
// Exact: conditions can only change at path-completion dates, so only those
// are scanned. nullopt when the condition never holds by `deadline` (defaults
// to the horizon).
std::optional<Timestamp> condition_time_from(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                             std::size_t k, ConditionMode mode, Timestamp start,
                                             std::optional<Timestamp> deadline = std::nullopt);

// Same scan over a precomputed enumeration, so sweeps over several (k, mode)
// pairs can share one path search.
std::optional<Timestamp> condition_time_over(const PathSetEnumeration& e, Timestamp horizon,
                                             std::size_t k, ConditionMode mode,
                                             std::optional<Timestamp> deadline = std::nullopt);

std::optional<Timestamp> condition_time(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                        std::size_t k, ConditionMode mode);

}  // namespace relcomm
