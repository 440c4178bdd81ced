#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relcomm/protocol.hpp"
#include "relcomm/wire.hpp"

namespace relcomm {

// One adversarial send: raw bytes to a set of peers. Targets are filtered to
// the emitter's current neighbors — channels stay authenticated, a Byzantine
// node cannot talk past its own contacts or hide its identity.
struct Emission {
  std::vector<NodeId> targets;  // empty = all current neighbors
  std::string bytes;
};

enum class StrategyKind {
  crash,             // never sends anything
  drop_all,          // announces its own broadcast, relays nothing
  mutate_payload,    // relays with tampered payloads
  forge_source,      // injects records claiming another node sent something
  fabricate_visited, // injects caller-supplied records verbatim
  replay,            // re-emits everything it has heard, unchanged
  scripted,          // fixed list of (date, targets, bytes)
};

const char* to_string(StrategyKind k);
std::optional<StrategyKind> strategy_kind_from_string(const std::string& s);

struct ScriptedEmission {
  Timestamp time;
  std::vector<NodeId> targets;  // empty = all current neighbors
  std::string bytes;
};

struct StrategySpec {
  StrategyKind kind = StrategyKind::crash;
  // forge_source parameters
  NodeId forged_source;
  std::string forged_payload;
  // fabricate_visited parameters
  std::vector<TupleRecord> fabricated;
  // scripted parameters
  std::vector<ScriptedEmission> script;
};

struct Placement {
  std::map<NodeId, StrategySpec> strategies;  // keys are the Byzantine nodes

  std::vector<NodeId> byzantine() const {
    std::vector<NodeId> out;
    for (const auto& [u, _] : strategies) out.push_back(u);
    return out;
  }
  std::size_t size() const { return strategies.size(); }
};

// Runtime hooks a strategy runs under.
struct ByzantineView {
  enum class Trigger { start, deliver, topology, wakeup };
  Trigger trigger;
  Timestamp time;
  std::vector<NodeId> neighbors;  // current, sorted
  NodeId sender;                  // deliver only
  std::string_view bytes;         // deliver only
};

class ByzantineBehavior {
 public:
  virtual ~ByzantineBehavior() = default;
  virtual std::vector<Emission> on_event(const ByzantineView& view) = 0;
  // Script-driven strategies declare wake-up dates; the engine schedules one
  // event per date.
  virtual std::vector<Timestamp> wakeup_times() const { return {}; }
};

struct BehaviorContext {
  NodeId self;
  ProtocolMode mode;
  std::string own_payload;
  std::vector<NodeId> all_nodes;
  // Signing restricted to the node's own identity; forging under another is
  // out of reach by the auth contract.
  std::function<std::string(const std::string&)> sign_own;
};

std::unique_ptr<ByzantineBehavior> make_behavior(const StrategySpec& spec,
                                                 const BehaviorContext& ctx);

}  // namespace relcomm
