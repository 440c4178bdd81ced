#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcomm/cut.hpp"
#include "relcomm/sim.hpp"

namespace relcomm {

// How badly a placement hurt the monitored pair, worst first: a safety break
// beats a liveness break beats mere delay.
struct PlacementOutcome {
  Placement placement;
  bool safety_violation = false;
  bool liveness_violation = false;
  std::optional<Timestamp> acceptance_time;  // of (p, p.m0) at q
};

struct PlacementSearchReport {
  PlacementOutcome worst;
  std::size_t evaluated = 0;
  std::size_t safety_violations = 0;
  std::size_t liveness_violations = 0;

  std::string text(const TimeVaryingGraph& g) const;
};

class PlacementBudgetExceeded : public std::runtime_error {
 public:
  PlacementBudgetExceeded(std::size_t budget, PlacementSearchReport partial)
      : std::runtime_error("placement search budget of " + std::to_string(budget) + " exceeded"),
        partial_report(std::move(partial)) {}
  PlacementSearchReport partial_report;
};

struct WorstCaseOptions {
  std::vector<StrategyKind> family{StrategyKind::crash, StrategyKind::drop_all,
                                   StrategyKind::mutate_payload, StrategyKind::forge_source,
                                   StrategyKind::replay};
  std::string forged_payload = "forged";
  std::size_t budget = 100'000;
  int threads = 1;
};

// Exhaustive search over node subsets of size <= k (excluding p and q) crossed
// with the strategy family, one simulation per candidate; deterministic
// regardless of thread count (fixed candidate order, worst outcome at the
// lowest index wins ties).
PlacementSearchReport worst_case_placement(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                           std::size_t k, ProtocolMode mode,
                                           const WorstCaseOptions& opts = {});

// Executable two-placement construction: when the pair's dynamic min cut is
// at most 2k, splits a minimum cut C into C1 (at most k) and C2 (the rest),
// and runs the two coupled scenarios — C1 Byzantine while p sends `payload`,
// C2 Byzantine replaying its peer-scenario behavior while p sends
// `payload_alt`. The receiver's two transcripts come out byte-identical: it
// cannot tell which message was sent. Returns nothing when the cut exceeds
// 2k.
struct AttackWitness {
  std::vector<NodeId> cut, group1, group2;
  std::string transcript1, transcript2;
  bool identical = false;

  std::string report(const TimeVaryingGraph& g) const;
};

std::optional<AttackWitness> indistinguishability_attack(const TimeVaryingGraph& g, NodeId p,
                                                         NodeId q, std::size_t k,
                                                         const std::string& payload,
                                                         const std::string& payload_alt);

}  // namespace relcomm
