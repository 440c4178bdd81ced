#include "relcomm/sim.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace relcomm {

namespace {

std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

// Phases order same-date work: appearances first, then broadcast starts, then
// deliveries and adversary emissions, then disappearances.
enum Phase : int { kUp = 0, kStart = 1, kDeliver = 2, kDown = 3 };

struct Event {
  std::int64_t time;
  int phase;
  std::uint64_t seq;
  enum class Kind { edge_up, edge_down, start, deliver, byz_wakeup } kind;
  std::uint32_t edge_index = 0;  // edge events
  NodeId node;                   // start / wakeup
  NodeId sender, receiver;       // deliver
  int world = 0;
  std::string bytes;  // deliver

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (phase != o.phase) return phase > o.phase;
    return seq > o.seq;
  }
};

struct World {
  std::map<NodeId, ProtocolNode> nodes;  // correct nodes only
  std::map<NodeId, std::unique_ptr<ByzantineBehavior>> behaviors;
  std::set<NodeId> byzantine;
  std::map<NodeId, std::string> payloads;
  RegistryAuthenticator own_auth;
  AuthProvider* auth = nullptr;
  RunResult result;
  std::set<NodeId> observed;
  // Mirrored sources: correct nodes here whose emissions are re-emitted as
  // Byzantine behavior in the peer world.
  std::set<NodeId> mirrored;
};

class Engine {
 public:
  Engine(const TimeVaryingGraph& g, Timestamp horizon, std::size_t max_records, int world_count)
      : g_(g), horizon_(horizon), max_records_(max_records), worlds_(world_count) {}

  World& world(int i) { return worlds_[i]; }
  int world_count() const { return static_cast<int>(worlds_.size()); }

  void schedule_topology() {
    for (std::uint32_t i = 0; i < g_.edge_data().size(); ++i)
      for (const Interval& iv : g_.edge_data()[i].presence.intervals()) {
        if (iv.start > horizon_) continue;
        push({iv.start.ticks, kUp, next_seq(), Event::Kind::edge_up, i, {}, {}, {}, 0, {}});
        if (iv.end <= horizon_)
          push({iv.end.ticks, kDown, next_seq(), Event::Kind::edge_down, i, {}, {}, {}, 0, {}});
      }
  }

  void schedule_start(int world, NodeId u, Timestamp t) {
    push({t.ticks, kStart, next_seq(), Event::Kind::start, 0, u, {}, {}, world, {}});
  }

  void schedule_wakeups(int world, NodeId u) {
    auto it = worlds_[world].behaviors.find(u);
    if (it == worlds_[world].behaviors.end()) return;
    for (Timestamp t : it->second->wakeup_times())
      if (t <= horizon_)
        push({t.ticks, kDeliver, next_seq(), Event::Kind::byz_wakeup, 0, u, {}, {}, world, {}});
  }

  void run_loop(bool multicast_on_edge_loss, bool record_byzantine) {
    multicast_on_edge_loss_ = multicast_on_edge_loss;
    record_byzantine_ = record_byzantine;
    while (!queue_.empty()) {
      if (queue_.top().time > horizon_.ticks) break;
      const Event ev = queue_.top();
      switch (ev.kind) {
        case Event::Kind::edge_up:
        case Event::Kind::edge_down: {
          // Batch all same-date topology flips of the same direction, apply
          // them, then notify: rule 1 sees the settled neighborhood.
          std::set<NodeId> affected;
          while (!queue_.empty() && queue_.top().time == ev.time &&
                 queue_.top().phase == ev.phase) {
            const Event e = queue_.top();
            queue_.pop();
            const Edge edge = g_.edge_data()[e.edge_index].edge;
            if (e.kind == Event::Kind::edge_up) {
              live_[edge.a].insert(edge.b);
              live_[edge.b].insert(edge.a);
            } else {
              live_[edge.a].erase(edge.b);
              live_[edge.b].erase(edge.a);
            }
            affected.insert(edge.a);
            affected.insert(edge.b);
          }
          const bool notify = ev.kind == Event::Kind::edge_up || multicast_on_edge_loss_;
          if (notify)
            for (NodeId u : affected)
              for (int w = 0; w < world_count(); ++w) topology_changed(w, u, Timestamp(ev.time));
          break;
        }
        case Event::Kind::start: {
          queue_.pop();
          handle_start(ev.world, ev.node, Timestamp(ev.time));
          break;
        }
        case Event::Kind::deliver: {
          queue_.pop();
          handle_deliver(ev.world, ev.sender, ev.receiver, ev.bytes, Timestamp(ev.time));
          break;
        }
        case Event::Kind::byz_wakeup: {
          queue_.pop();
          ByzantineView view{ByzantineView::Trigger::wakeup, Timestamp(ev.time),
                             neighbors_of(ev.node), {}, {}};
          run_behavior(ev.world, ev.node, view);
          break;
        }
      }
    }
    for (auto& w : worlds_) {
      std::sort(w.result.acceptances.begin(), w.result.acceptances.end());
      w.result.stored_records = stored_records(w);
    }
  }

 private:
  std::uint64_t next_seq() { return seq_++; }
  void push(Event ev) { queue_.push(std::move(ev)); }

  std::vector<NodeId> neighbors_of(NodeId u) const {
    auto it = live_.find(u);
    if (it == live_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  static std::uint64_t stored_records(const World& w) {
    std::uint64_t total = 0;
    for (const auto& [_, node] : w.nodes) total += node.record_count();
    return total;
  }

  void handle_start(int wi, NodeId u, Timestamp t) {
    World& w = worlds_[wi];
    auto node_it = w.nodes.find(u);
    if (node_it != w.nodes.end()) {
      if (node_it->second.seed_broadcast(w.payloads.at(u))) {
        w.result.acceptances.push_back({u, u, w.payloads.at(u), t});
        multicast(wi, u, node_it->second.omega_bytes(), t);
      }
      return;
    }
    ByzantineView view{ByzantineView::Trigger::start, t, neighbors_of(u), {}, {}};
    run_behavior(wi, u, view);
  }

  void topology_changed(int wi, NodeId u, Timestamp t) {
    World& w = worlds_[wi];
    auto node_it = w.nodes.find(u);
    if (node_it != w.nodes.end()) {
      multicast(wi, u, node_it->second.omega_bytes(), t);
      return;
    }
    if (w.behaviors.count(u)) {
      ByzantineView view{ByzantineView::Trigger::topology, t, neighbors_of(u), {}, {}};
      run_behavior(wi, u, view);
    }
  }

  void handle_deliver(int wi, NodeId sender, NodeId receiver, const std::string& bytes,
                      Timestamp t) {
    World& w = worlds_[wi];
    w.result.messages_delivered++;
    if (w.observed.count(receiver))
      w.result.transcripts[receiver].push_back({t, sender, bytes});

    auto node_it = w.nodes.find(receiver);
    if (node_it == w.nodes.end()) {
      if (w.behaviors.count(receiver)) {
        ByzantineView view{ByzantineView::Trigger::deliver, t, neighbors_of(receiver), sender,
                           bytes};
        run_behavior(wi, receiver, view);
      }
      return;
    }

    ProtocolNode& node = node_it->second;
    auto outcome = node.on_receive(sender, bytes);
    w.result.malformed_records += outcome.malformed;
    w.result.records_delivered += outcome.decoded;
    for (const auto& [source, payload] : outcome.new_acceptances)
      w.result.acceptances.push_back({receiver, source, payload, t});
    if (outcome.omega_changed) {
      const std::uint64_t stored = stored_records(w);
      if (stored > max_records_) {
        std::sort(w.result.acceptances.begin(), w.result.acceptances.end());
        w.result.stored_records = stored;
        throw SimExplosionError(stored, max_records_, w.result);
      }
      multicast(wi, receiver, node.omega_bytes(), t);
    }
  }

  // Rule 1: send the full record set to every current neighbor. A leg only
  // materializes when the edge stays present through [t, t + latency(t)];
  // otherwise the message is lost (a later topology change resends).
  void multicast(int wi, NodeId u, const std::string& bytes, Timestamp t) {
    for (NodeId v : neighbors_of(u)) send_leg(wi, u, v, bytes, t);
    mirror(wi, u, {}, bytes, t);
  }

  void send_leg(int wi, NodeId u, NodeId v, const std::string& bytes, Timestamp t) {
    World& w = worlds_[wi];
    w.result.messages_sent++;
    const auto* data = g_.find_edge(Edge::between(u, v));
    const Duration lat = data->latency.at(t);
    if (!data->presence.covers(t, lat)) {
      w.result.messages_dropped++;
      return;
    }
    const Timestamp arrival = t + lat;
    if (arrival > horizon_) {
      w.result.messages_dropped++;
      return;
    }
    push({arrival.ticks, kDeliver, next_seq(), Event::Kind::deliver, 0, {}, u, v, wi, bytes});
  }

  void run_behavior(int wi, NodeId u, const ByzantineView& view) {
    World& w = worlds_[wi];
    auto it = w.behaviors.find(u);
    if (it == w.behaviors.end()) return;
    for (const Emission& e : it->second->on_event(view)) emit(wi, u, e, view.time);
  }

  // Adversarial send: restricted to current neighbors, same presence rules as
  // any other traffic.
  void emit(int wi, NodeId u, const Emission& emission, Timestamp t) {
    std::vector<NodeId> targets;
    const std::vector<NodeId> current = neighbors_of(u);
    if (emission.targets.empty()) {
      targets = current;
    } else {
      for (NodeId v : emission.targets)
        if (std::binary_search(current.begin(), current.end(), v)) targets.push_back(v);
    }
    if (record_byzantine_ && worlds_[wi].byzantine.count(u))
      worlds_[wi].result.byzantine_log.push_back({t, u, targets, emission.bytes});
    for (NodeId v : targets) send_leg(wi, u, v, emission.bytes, t);
  }

  // Lockstep coupling: a mirrored node's emission in this world is replayed
  // verbatim, at the same date over the same channels, by its Byzantine twin
  // in the peer world.
  void mirror(int wi, NodeId u, const std::vector<NodeId>&, const std::string& bytes,
              Timestamp t) {
    if (!worlds_[wi].mirrored.count(u)) return;
    const int peer = 1 - wi;
    for (NodeId v : neighbors_of(u)) send_leg(peer, u, v, bytes, t);
  }

  const TimeVaryingGraph& g_;
  Timestamp horizon_;
  std::size_t max_records_;
  std::vector<World> worlds_;
  std::map<NodeId, std::set<NodeId>> live_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  bool multicast_on_edge_loss_ = true;
  bool record_byzantine_ = false;
};

std::string default_payload(const TimeVaryingGraph& g, NodeId u) {
  return "m0:" + g.label(u);
}

void populate_world(World& w, const TimeVaryingGraph& g, std::size_t k, ProtocolMode mode,
                    const std::map<NodeId, std::string>& payload_overrides,
                    const std::set<NodeId>& byzantine, AuthProvider* auth,
                    const std::vector<NodeId>& observed) {
  w.auth = auth ? auth : &w.own_auth;
  w.byzantine = byzantine;
  w.observed.insert(observed.begin(), observed.end());
  for (NodeId u : g.nodes()) {
    auto it = payload_overrides.find(u);
    w.payloads[u] = it != payload_overrides.end() ? it->second : default_payload(g, u);
    if (!byzantine.count(u)) w.nodes.emplace(u, ProtocolNode(u, k, mode, w.auth));
  }
}

BehaviorContext behavior_context(World& w, const TimeVaryingGraph& g, ProtocolMode mode,
                                 NodeId u) {
  return BehaviorContext{u, mode, w.payloads.at(u), g.nodes(),
                         [&w, u](const std::string& m) { return w.auth->sign(u, m); }};
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (!config.graph) throw std::invalid_argument("run config has no graph");
  const TimeVaryingGraph& g = *config.graph;
  const Timestamp horizon = config.horizon.value_or(g.horizon());
  if (horizon > g.horizon())
    throw std::invalid_argument("run horizon exceeds the graph horizon");
  for (const auto& [u, t] : config.broadcast_starts) {
    if (!g.has_node(u)) throw std::invalid_argument("broadcast start for unknown node");
    if (t > horizon) throw std::invalid_argument("broadcast start past the horizon");
  }
  for (const auto& [u, _] : config.placement.strategies)
    if (!g.has_node(u)) throw std::invalid_argument("placement names unknown node");

  Engine engine(g, horizon, config.max_total_records, 1);
  World& w = engine.world(0);
  std::set<NodeId> byz;
  for (const auto& [u, _] : config.placement.strategies) byz.insert(u);
  populate_world(w, g, config.k, config.mode, config.broadcast_payloads, byz, config.auth,
                 config.observed);

  if (config.replay) {
    // Verbatim re-emission substitutes every Byzantine strategy.
    std::map<NodeId, StrategySpec> scripts;
    for (const EmissionRecord& rec : *config.replay) {
      if (!byz.count(rec.emitter)) continue;
      scripts[rec.emitter].kind = StrategyKind::scripted;
      scripts[rec.emitter].script.push_back({rec.time, rec.targets, rec.bytes});
    }
    for (auto& [u, spec] : scripts)
      w.behaviors[u] = make_behavior(spec, behavior_context(w, g, config.mode, u));
  } else {
    for (const auto& [u, spec] : config.placement.strategies)
      w.behaviors[u] = make_behavior(spec, behavior_context(w, g, config.mode, u));
  }

  engine.schedule_topology();
  for (NodeId u : g.nodes()) {
    auto it = config.broadcast_starts.find(u);
    engine.schedule_start(0, u, it != config.broadcast_starts.end() ? it->second : Timestamp(0));
    engine.schedule_wakeups(0, u);
  }
  engine.run_loop(config.multicast_on_edge_loss, config.record_byzantine);
  return std::move(engine.world(0).result);
}

std::array<RunResult, 2> run_mirror_pair(const MirrorPairConfig& config) {
  if (!config.graph) throw std::invalid_argument("mirror config has no graph");
  const TimeVaryingGraph& g = *config.graph;

  Engine engine(g, g.horizon(), config.max_total_records, 2);
  for (int wi = 0; wi < 2; ++wi) {
    World& w = engine.world(wi);
    std::map<NodeId, std::string> payloads = config.broadcast_payloads;
    payloads[config.source] = config.payloads[static_cast<std::size_t>(wi)];
    std::set<NodeId> byz(config.byzantine[static_cast<std::size_t>(wi)].begin(),
                         config.byzantine[static_cast<std::size_t>(wi)].end());
    populate_world(w, g, config.k, config.mode, payloads, byz, nullptr, config.observed);
    // Nodes Byzantine here are correct in the peer world; their emissions over
    // there drive this world's copies. No local behavior objects needed.
  }
  engine.world(0).mirrored = {engine.world(1).byzantine.begin(),
                              engine.world(1).byzantine.end()};
  engine.world(1).mirrored = {engine.world(0).byzantine.begin(),
                              engine.world(0).byzantine.end()};

  engine.schedule_topology();
  for (NodeId u : g.nodes())
    for (int wi = 0; wi < 2; ++wi) engine.schedule_start(wi, u, Timestamp(0));
  engine.run_loop(true, false);
  return {std::move(engine.world(0).result), std::move(engine.world(1).result)};
}

std::optional<Timestamp> first_acceptance_time(const RunResult& result, NodeId source,
                                               NodeId receiver) {
  std::optional<Timestamp> best;
  for (const AcceptanceEvent& a : result.acceptances)
    if (a.source == source && a.receiver == receiver && (!best || a.time < *best)) best = a.time;
  return best;
}

std::string transcript_text(const std::vector<Observation>& observations) {
  std::vector<std::tuple<std::int64_t, std::uint64_t, std::string>> lines;
  lines.reserve(observations.size());
  for (const Observation& o : observations)
    lines.emplace_back(o.time.ticks, o.sender.value, hex(o.bytes));
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& [t, sender, data] : lines)
    out << "t=" << t << " from=" << sender << " data=" << data << "\n";
  return out.str();
}

std::string RunResult::canonical_text() const {
  std::ostringstream out;
  out << "acceptances:\n";
  for (const AcceptanceEvent& a : acceptances)
    out << "  receiver=" << a.receiver.value << " source=" << a.source.value
        << " t=" << a.time.ticks << " payload=" << hex(a.payload) << "\n";
  out << "messages: sent=" << messages_sent << " delivered=" << messages_delivered
      << " dropped=" << messages_dropped << " useful=" << records_delivered
      << " malformed=" << malformed_records << " stored=" << stored_records << "\n";
  for (const auto& [node, log] : transcripts) {
    out << "transcript node=" << node.value << ":\n";
    out << transcript_text(log);
  }
  return out.str();
}

}  // namespace relcomm
