#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcomm/auth.hpp"
#include "relcomm/byzantine.hpp"
#include "relcomm/protocol.hpp"
#include "relcomm/tvg.hpp"

namespace relcomm {

struct Observation {
  Timestamp time;
  NodeId sender;
  std::string bytes;
};

struct EmissionRecord {
  Timestamp time;
  NodeId emitter;
  std::vector<NodeId> targets;
  std::string bytes;
};
using ReplayLog = std::vector<EmissionRecord>;

struct AcceptanceEvent {
  NodeId receiver;
  NodeId source;
  std::string payload;
  Timestamp time;

  auto operator<=>(const AcceptanceEvent&) const = default;
};

struct RunConfig {
  const TimeVaryingGraph* graph = nullptr;
  std::size_t k = 0;
  ProtocolMode mode = ProtocolMode::noncrypto;
  Placement placement;
  // m0 per node; nodes absent from the map broadcast "m0:<label>". Byzantine
  // nodes receive theirs through their strategy context.
  std::map<NodeId, std::string> broadcast_payloads;
  std::map<NodeId, Timestamp> broadcast_starts;  // default 0
  std::optional<Timestamp> horizon;              // default: graph horizon
  // Rule 1 fires on any local-topology change; edge loss can be excluded.
  bool multicast_on_edge_loss = true;
  bool record_byzantine = false;
  const ReplayLog* replay = nullptr;  // substitutes Byzantine strategies
  std::vector<NodeId> observed;       // nodes whose inbound traffic is logged
  std::size_t max_total_records = 200'000;
  AuthProvider* auth = nullptr;  // crypto mode; engine owns a registry if null
};

struct RunResult {
  std::vector<AcceptanceEvent> acceptances;  // sorted
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_dropped = 0;
  std::uint64_t records_delivered = 0;
  std::uint64_t malformed_records = 0;
  std::uint64_t stored_records = 0;
  std::map<NodeId, std::vector<Observation>> transcripts;
  ReplayLog byzantine_log;

  // Canonical serialization, sorted keys throughout; byte-identical across
  // repeated runs of the same config.
  std::string canonical_text() const;
};

// Per-timestamp canonical transcript rendering. Same-date observations carry
// no meaningful order (they are concurrent deliveries), so they are sorted by
// (sender, bytes) within each date.
std::string transcript_text(const std::vector<Observation>& observations);

class SimExplosionError : public std::runtime_error {
 public:
  SimExplosionError(std::size_t stored, std::size_t cap, RunResult partial)
      : std::runtime_error("record storage exceeded guard of " + std::to_string(cap) +
                           " (stored " + std::to_string(stored) + ")"),
        partial_result(std::move(partial)) {}
  RunResult partial_result;
};

// Deterministic discrete-event execution of the broadcast protocol over a
// time-varying graph. Edge appearances, disappearances and deliveries are
// processed in (date, phase, scheduling order); a send only goes through when
// the edge stays present through its whole latency window, and zero-latency
// chains resolve as same-date micro-steps.
RunResult run(const RunConfig& config);

std::optional<Timestamp> first_acceptance_time(const RunResult& result, NodeId source,
                                               NodeId receiver);

// Two executions of the same network driven in lockstep, each observing the
// other: in world 0 the `byzantine0` nodes emit exactly what they emit as
// correct nodes in world 1, and vice versa. This computes the behavioral
// fixpoint the two-placement indistinguishability construction needs, which
// sequential record-then-replay cannot (each side's script depends on the
// other run).
struct MirrorPairConfig {
  const TimeVaryingGraph* graph = nullptr;
  std::size_t k = 0;
  ProtocolMode mode = ProtocolMode::noncrypto;
  std::map<NodeId, std::string> broadcast_payloads;
  NodeId source;                        // the sender under attack
  std::array<std::string, 2> payloads;  // source's payload per world
  std::array<std::vector<NodeId>, 2> byzantine;
  std::vector<NodeId> observed;
  std::size_t max_total_records = 200'000;
};

std::array<RunResult, 2> run_mirror_pair(const MirrorPairConfig& config);

}  // namespace relcomm
