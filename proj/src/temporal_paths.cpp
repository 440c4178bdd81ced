#include "relcomm/temporal_paths.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace relcomm {

namespace {

bool set_less(const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

PathSetCollection PathSetCollection::normalized(std::vector<std::vector<NodeId>> raw) {
  for (auto& s : raw) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(raw.begin(), raw.end(), set_less);
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  PathSetCollection c;
  c.sets = std::move(raw);
  return c;
}

bool PathSetCollection::contains(std::vector<NodeId> set) const {
  std::sort(set.begin(), set.end());
  return std::binary_search(sets.begin(), sets.end(), set, set_less);
}

std::optional<Timestamp> earliest_feasible_send(const TimeVaryingGraph::EdgeData& d,
                                                Timestamp from) {
  for (const Interval& iv : d.presence.intervals()) {
    if (iv.end < from) continue;
    Timestamp lo = std::max(iv.start, from);
    // Candidate send dates inside [lo, iv.end]: lo itself plus every latency
    // step point. Latency is constant between candidates, so within each
    // stretch the earliest date is feasible iff any is.
    std::vector<Timestamp> candidates{lo};
    if (!d.latency.is_constant())
      for (const auto& [st, dur] : d.latency.step_points())
        if (lo < st && st <= iv.end) candidates.push_back(st);
    std::sort(candidates.begin(), candidates.end());
    for (Timestamp t : candidates)
      if (t + d.latency.at(t) <= iv.end) return t;
  }
  return std::nullopt;
}

bool is_dynamic_path(const TimeVaryingGraph& g, const std::vector<NodeId>& nodes,
                     const std::vector<Timestamp>& dates) {
  if (nodes.size() != dates.size())
    throw std::invalid_argument("node and date sequences differ in length");
  if (nodes.empty()) throw std::invalid_argument("empty sequence");
  for (NodeId u : nodes)
    if (!g.has_node(u)) throw std::invalid_argument("node not in graph");

  std::set<NodeId> seen(nodes.begin(), nodes.end());
  if (seen.size() != nodes.size()) return false;

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const TimeVaryingGraph::EdgeData* d = g.find_edge(Edge::between(nodes[i], nodes[i + 1]));
    if (!d) return false;
    const Timestamp t = dates[i];
    if (t.ticks < 0) return false;
    const Duration lat = d->latency.at(t);
    if (!d->presence.covers(t, lat)) return false;
    if (t + lat > dates[i + 1]) return false;
  }
  return true;
}

namespace {

struct EnumerationContext {
  const TimeVaryingGraph& g;
  std::size_t n;
  std::vector<NodeId> index_to_node;
  std::size_t p_idx, q_idx;
  std::size_t max_sets;
  // Best arrival seen per (node, visited-mask) state; a revisit helps only if
  // strictly earlier, since every continuation is monotone in the arrival.
  std::unordered_map<std::uint64_t, std::int64_t> state_best;
  // Emitted intermediate-node masks with their earliest completion dates.
  std::map<std::uint64_t, std::int64_t> completions;

  std::size_t node_index(NodeId u) const {
    auto it = std::lower_bound(index_to_node.begin(), index_to_node.end(), u);
    return static_cast<std::size_t>(it - index_to_node.begin());
  }

  bool dominated_branch(std::uint64_t intermediates, std::int64_t arrival) const {
    // Any completion of this branch would be a superset of `intermediates`
    // finishing at or after `arrival`; an emitted (mask, time) with
    // mask ⊆ intermediates and time <= arrival therefore dominates it in both
    // coordinates and the branch can be cut without changing the frontier.
    for (const auto& [mask, time] : completions)
      if ((mask & ~intermediates) == 0 && time <= arrival) return true;
    return false;
  }

  void dfs(std::size_t u, std::uint64_t visited, std::int64_t arrival) {
    const std::uint64_t key = (visited << 6) | u;
    auto it = state_best.find(key);
    if (it != state_best.end() && it->second <= arrival) return;
    state_best[key] = arrival;

    const std::uint64_t intermediates = visited & ~(1ULL << p_idx);
    if (u != q_idx && dominated_branch(intermediates, arrival)) return;

    for (const auto& entry : g.adjacency(index_to_node[u])) {
      const std::size_t v = node_index(entry.neighbor);
      if (visited & (1ULL << v)) continue;
      auto send = earliest_feasible_send(g.edge_data()[entry.edge_index], Timestamp(arrival));
      if (!send) continue;
      const std::int64_t reach = (*send + g.edge_data()[entry.edge_index].latency.at(*send)).ticks;
      if (v == q_idx) {
        auto [cit, inserted] = completions.try_emplace(intermediates, reach);
        if (!inserted && reach < cit->second) cit->second = reach;
        if (inserted && completions.size() > max_sets)
          throw EnumerationCapExceeded(completions.size(), max_sets);
        continue;
      }
      dfs(v, visited | (1ULL << v), reach);
    }
  }
};

}  // namespace

PathSetEnumeration enumerate_path_sets(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                       const EnumerationOptions& opts) {
  if (!g.has_node(p) || !g.has_node(q)) throw std::invalid_argument("node not in graph");
  if (p == q) throw std::invalid_argument("source and target must differ");
  if (g.nodes().size() > 58)
    throw std::invalid_argument("path-set enumeration supports at most 58 nodes");
  require_non_negative(opts.start, "enumeration start");

  EnumerationContext ctx{g,
                         g.nodes().size(),
                         g.nodes(),
                         0,
                         0,
                         opts.max_sets,
                         {},
                         {}};
  ctx.p_idx = ctx.node_index(p);
  ctx.q_idx = ctx.node_index(q);
  ctx.dfs(ctx.p_idx, 1ULL << ctx.p_idx, opts.start.ticks);

  // Keep the Pareto frontier: drop (S, c) when a proper subset completes no
  // later. Hitting the subset hits S, at every truncation date, so nothing
  // downstream can tell the difference.
  std::vector<std::pair<std::uint64_t, std::int64_t>> kept;
  for (const auto& [mask, time] : ctx.completions) {
    bool dominated = false;
    for (const auto& [other_mask, other_time] : ctx.completions) {
      if (other_mask == mask) continue;
      if ((other_mask & ~mask) == 0 && other_time <= time) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.emplace_back(mask, time);
  }

  std::vector<std::vector<NodeId>> sets;
  std::vector<Timestamp> times;
  sets.reserve(kept.size());
  for (const auto& [mask, time] : kept) {
    std::vector<NodeId> s;
    for (std::size_t i = 0; i < ctx.n; ++i)
      if (mask & (1ULL << i)) s.push_back(ctx.index_to_node[i]);
    sets.push_back(std::move(s));
    times.push_back(Timestamp(time));
  }
  // Canonical collection order, with the completion vector kept parallel.
  std::vector<std::size_t> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return set_less(sets[x], sets[y]); });
  PathSetEnumeration out;
  for (std::size_t i : order) {
    out.collection.sets.push_back(std::move(sets[i]));
    out.completion.push_back(times[i]);
  }
  return out;
}

std::optional<Timestamp> earliest_arrival(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                          Timestamp start, const std::vector<NodeId>& excluded) {
  if (!g.has_node(p) || !g.has_node(q)) throw std::invalid_argument("node not in graph");
  require_non_negative(start, "start");
  std::set<NodeId> blocked(excluded.begin(), excluded.end());
  if (blocked.count(p) || blocked.count(q))
    throw std::invalid_argument("endpoints may not be excluded");
  if (p == q) return start;

  std::map<NodeId, std::int64_t> best;
  using Item = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  best[p] = start.ticks;
  heap.push({start.ticks, p});
  while (!heap.empty()) {
    auto [at, u] = heap.top();
    heap.pop();
    if (at != best[u]) continue;
    if (u == q) return Timestamp(at);
    for (const auto& entry : g.adjacency(u)) {
      if (blocked.count(entry.neighbor)) continue;
      const auto& d = g.edge_data()[entry.edge_index];
      auto send = earliest_feasible_send(d, Timestamp(at));
      if (!send) continue;
      const std::int64_t reach = (*send + d.latency.at(*send)).ticks;
      auto it = best.find(entry.neighbor);
      if (it == best.end() || reach < it->second) {
        best[entry.neighbor] = reach;
        heap.push({reach, entry.neighbor});
      }
    }
  }
  return std::nullopt;
}

namespace {

int best_disjoint(const std::vector<std::uint64_t>& masks, std::size_t from, std::uint64_t used,
                  int picked) {
  int best = picked;
  for (std::size_t i = from; i < masks.size(); ++i) {
    if (masks[i] & used) continue;
    best = std::max(best, best_disjoint(masks, i + 1, used | masks[i], picked + 1));
  }
  return best;
}

}  // namespace

int max_disjoint_paths(const TimeVaryingGraph& g, NodeId p, NodeId q) {
  if (p == q) throw std::invalid_argument("source and target must differ");
  PathSetEnumeration e = enumerate_path_sets(g, p, q);

  std::vector<NodeId> ground;
  for (const auto& s : e.collection.sets) ground.insert(ground.end(), s.begin(), s.end());
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());

  std::vector<std::uint64_t> masks;
  bool has_empty = false;
  for (const auto& s : e.collection.sets) {
    if (s.empty()) {
      has_empty = true;  // the direct path is internally disjoint from everything
      continue;
    }
    std::uint64_t m = 0;
    for (NodeId u : s) {
      const std::size_t i = static_cast<std::size_t>(
          std::lower_bound(ground.begin(), ground.end(), u) - ground.begin());
      m |= 1ULL << i;
    }
    masks.push_back(m);
  }
  return (has_empty ? 1 : 0) + best_disjoint(masks, 0, 0, 0);
}

}  // namespace relcomm
