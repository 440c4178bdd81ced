#include "relcomm/byzantine.hpp"

#include <algorithm>

namespace relcomm {

const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::crash: return "crash";
    case StrategyKind::drop_all: return "drop_all";
    case StrategyKind::mutate_payload: return "mutate_payload";
    case StrategyKind::forge_source: return "forge_source";
    case StrategyKind::fabricate_visited: return "fabricate_visited";
    case StrategyKind::replay: return "replay";
    case StrategyKind::scripted: return "scripted";
  }
  return "?";
}

std::optional<StrategyKind> strategy_kind_from_string(const std::string& s) {
  for (StrategyKind k :
       {StrategyKind::crash, StrategyKind::drop_all, StrategyKind::mutate_payload,
        StrategyKind::forge_source, StrategyKind::fabricate_visited, StrategyKind::replay,
        StrategyKind::scripted})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

namespace {

class Crash final : public ByzantineBehavior {
 public:
  std::vector<Emission> on_event(const ByzantineView&) override { return {}; }
};

// Sends its own initial record whenever its neighborhood changes, exactly like
// a node that joined honestly, but never relays anything it hears.
class DropAll final : public ByzantineBehavior {
 public:
  explicit DropAll(const BehaviorContext& ctx) {
    if (ctx.mode == ProtocolMode::noncrypto) {
      const TupleRecord own{ctx.self, ctx.own_payload, {}};
      message_ = encode_message(std::span(&own, 1));
    } else {
      const SignedRecord own{ctx.self, ctx.sign_own(ctx.own_payload)};
      message_ = encode_message(std::span(&own, 1));
    }
  }

  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger == ByzantineView::Trigger::deliver) return {};
    if (view.neighbors.empty()) return {};
    return {Emission{{}, message_}};
  }

 private:
  std::string message_;
};

// Relays whatever it receives with every payload bit-flipped (and itself
// appended to visited sets, mimicking an honest relay).
class MutatePayload final : public ByzantineBehavior {
 public:
  explicit MutatePayload(const BehaviorContext& ctx) : mode_(ctx.mode), self_(ctx.self) {}

  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger != ByzantineView::Trigger::deliver) return {};
    std::string out;
    if (mode_ == ProtocolMode::noncrypto) {
      auto decoded = decode_tuple_message(view.bytes);
      if (decoded.records.empty()) return {};
      for (TupleRecord& rec : decoded.records) {
        tamper(rec.payload);
        if (!std::binary_search(rec.visited.begin(), rec.visited.end(), view.sender))
          rec.visited.insert(
              std::lower_bound(rec.visited.begin(), rec.visited.end(), view.sender),
              view.sender);
      }
      out = encode_message(std::span(decoded.records.data(), decoded.records.size()));
    } else {
      auto decoded = decode_signed_message(view.bytes);
      if (decoded.records.empty()) return {};
      for (SignedRecord& rec : decoded.records) tamper(rec.blob);
      out = encode_message(std::span(decoded.records.data(), decoded.records.size()));
    }
    return {Emission{{}, out}};
  }

 private:
  static void tamper(std::string& payload) {
    if (payload.empty())
      payload.push_back('\x01');
    else
      payload[0] = static_cast<char>(payload[0] ^ 0xff);
  }
  ProtocolMode mode_;
  NodeId self_;
};

// Claims `forged_source` broadcast `forged_payload`, dressed up with assorted
// visited sets so receivers see several seemingly independent relay chains.
class ForgeSource final : public ByzantineBehavior {
 public:
  ForgeSource(const StrategySpec& spec, const BehaviorContext& ctx) {
    if (ctx.mode == ProtocolMode::noncrypto) {
      std::vector<TupleRecord> records;
      records.push_back({spec.forged_source, spec.forged_payload, {spec.forged_source}});
      for (NodeId x : ctx.all_nodes) {
        if (x == spec.forged_source || x == ctx.self) continue;
        std::vector<NodeId> visited{spec.forged_source, x};
        std::sort(visited.begin(), visited.end());
        records.push_back({spec.forged_source, spec.forged_payload, std::move(visited)});
      }
      message_ = encode_message(std::span(records.data(), records.size()));
    } else {
      // No private key for the victim: the best available is an unverifiable
      // blob under the claimed identity.
      const SignedRecord forged{spec.forged_source, "forged:" + spec.forged_payload};
      message_ = encode_message(std::span(&forged, 1));
    }
  }

  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger == ByzantineView::Trigger::deliver || view.neighbors.empty()) return {};
    return {Emission{{}, message_}};
  }

 private:
  std::string message_;
};

class FabricateVisited final : public ByzantineBehavior {
 public:
  explicit FabricateVisited(const StrategySpec& spec) {
    auto records = spec.fabricated;
    for (auto& r : records) std::sort(r.visited.begin(), r.visited.end());
    message_ = encode_message(std::span(records.data(), records.size()));
  }

  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger == ByzantineView::Trigger::deliver || view.neighbors.empty()) return {};
    return {Emission{{}, message_}};
  }

 private:
  std::string message_;
};

// Echoes every message it has ever received, verbatim, at each event.
class Replay final : public ByzantineBehavior {
 public:
  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger == ByzantineView::Trigger::deliver)
      heard_.emplace_back(view.bytes);
    if (view.neighbors.empty()) return {};
    std::vector<Emission> out;
    out.reserve(heard_.size());
    for (const std::string& bytes : heard_) out.push_back(Emission{{}, bytes});
    return out;
  }

 private:
  std::vector<std::string> heard_;
};

class Scripted final : public ByzantineBehavior {
 public:
  explicit Scripted(const StrategySpec& spec) : script_(spec.script) {}

  std::vector<Emission> on_event(const ByzantineView& view) override {
    if (view.trigger != ByzantineView::Trigger::wakeup) return {};
    std::vector<Emission> out;
    for (const ScriptedEmission& e : script_)
      if (e.time == view.time) out.push_back(Emission{e.targets, e.bytes});
    return out;
  }

  std::vector<Timestamp> wakeup_times() const override {
    std::vector<Timestamp> times;
    for (const ScriptedEmission& e : script_) times.push_back(e.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
  }

 private:
  std::vector<ScriptedEmission> script_;
};

}  // namespace

std::unique_ptr<ByzantineBehavior> make_behavior(const StrategySpec& spec,
                                                 const BehaviorContext& ctx) {
  switch (spec.kind) {
    case StrategyKind::crash: return std::make_unique<Crash>();
    case StrategyKind::drop_all: return std::make_unique<DropAll>(ctx);
    case StrategyKind::mutate_payload: return std::make_unique<MutatePayload>(ctx);
    case StrategyKind::forge_source: return std::make_unique<ForgeSource>(spec, ctx);
    case StrategyKind::fabricate_visited: return std::make_unique<FabricateVisited>(spec);
    case StrategyKind::replay: return std::make_unique<Replay>();
    case StrategyKind::scripted: return std::make_unique<Scripted>(spec);
  }
  throw std::invalid_argument("unknown strategy kind");
}

}  // namespace relcomm
