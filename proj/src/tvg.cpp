#include "relcomm/tvg.hpp"

#include <algorithm>
#include <set>

namespace relcomm {

PresenceSchedule PresenceSchedule::from_intervals(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    require_non_negative(iv.start, "presence interval");
    if (iv.end < iv.start)
      throw std::invalid_argument("presence interval with start > end");
  }
  std::sort(raw.begin(), raw.end());
  PresenceSchedule s;
  for (const Interval& iv : raw) {
    if (!s.intervals_.empty() && iv.start <= s.intervals_.back().end) {
      if (iv.end > s.intervals_.back().end) s.intervals_.back().end = iv.end;
    } else {
      s.intervals_.push_back(iv);
    }
  }
  return s;
}

bool PresenceSchedule::contains(Timestamp t) const { return covers(t, Duration(0)); }

bool PresenceSchedule::covers(Timestamp t, Duration d) const {
  // Last interval with start <= t must reach past t + d.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](Timestamp v, const Interval& iv) { return v < iv.start; });
  if (it == intervals_.begin()) return false;
  --it;
  return t + d <= it->end;
}

LatencySpec LatencySpec::constant(Duration d) {
  require_non_negative(d, "latency");
  LatencySpec s;
  s.steps_.emplace_back(Timestamp(0), d);
  return s;
}

LatencySpec LatencySpec::steps(std::vector<std::pair<Timestamp, Duration>> steps) {
  if (steps.empty()) throw std::invalid_argument("latency steps must be non-empty");
  std::sort(steps.begin(), steps.end());
  if (steps.front().first != Timestamp(0))
    throw std::invalid_argument("latency steps must start at t=0 to be total");
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (steps[i].first == steps[i - 1].first)
      throw std::invalid_argument("duplicate latency step time");
  for (const auto& [t, d] : steps) require_non_negative(d, "latency step");
  LatencySpec s;
  s.steps_ = std::move(steps);
  return s;
}

Duration LatencySpec::at(Timestamp t) const {
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), t,
      [](Timestamp v, const std::pair<Timestamp, Duration>& s) { return v < s.first; });
  // First step is at 0 and t >= 0, so it can never be begin().
  return std::prev(it)->second;
}

bool TimeVaryingGraph::has_node(NodeId u) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), u);
}

bool TimeVaryingGraph::has_edge(Edge e) const { return find_edge(e) != nullptr; }

const TimeVaryingGraph::EdgeData* TimeVaryingGraph::find_edge(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const EdgeData& d, Edge key) { return d.edge < key; });
  if (it == edges_.end() || !(it->edge == e)) return nullptr;
  return &*it;
}

std::size_t TimeVaryingGraph::node_index(NodeId u) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), u);
  if (it == nodes_.end() || *it != u)
    throw std::invalid_argument("unknown node " + std::to_string(u.value));
  return static_cast<std::size_t>(it - nodes_.begin());
}

const std::string& TimeVaryingGraph::label(NodeId u) const {
  auto it = labels_.find(u);
  if (it == labels_.end()) throw std::invalid_argument("unknown node " + std::to_string(u.value));
  return it->second;
}

std::optional<NodeId> TimeVaryingGraph::node_by_label(const std::string& label) const {
  auto it = labels_reverse_.find(label);
  if (it == labels_reverse_.end()) return std::nullopt;
  return it->second;
}

bool TimeVaryingGraph::edge_present(Edge e, Timestamp t) const {
  const EdgeData* d = find_edge(e);
  if (!d) throw std::invalid_argument("unknown edge");
  if (t > horizon_) throw std::out_of_range("date past the horizon");
  return d->presence.contains(t);
}

bool TimeVaryingGraph::present_throughout(Edge e, Timestamp t, Duration dur) const {
  const EdgeData* d = find_edge(e);
  if (!d) throw std::invalid_argument("unknown edge");
  if (t > horizon_) throw std::out_of_range("date past the horizon");
  return d->presence.covers(t, dur);
}

Duration TimeVaryingGraph::latency_at(Edge e, Timestamp t) const {
  const EdgeData* d = find_edge(e);
  if (!d) throw std::invalid_argument("unknown edge");
  return d->latency.at(t);
}

std::vector<NodeId> TimeVaryingGraph::neighbors_at(NodeId u, Timestamp t) const {
  if (t > horizon_) throw std::out_of_range("date past the horizon");
  std::vector<NodeId> out;
  for (const AdjEntry& entry : adjacency(u))
    if (edges_[entry.edge_index].presence.contains(t)) out.push_back(entry.neighbor);
  return out;
}

std::vector<Timestamp> TimeVaryingGraph::topology_change_times(NodeId u) const {
  std::set<Timestamp> points;
  for (const AdjEntry& entry : adjacency(u))
    for (const Interval& iv : edges_[entry.edge_index].presence.intervals()) {
      points.insert(iv.start);
      points.insert(iv.end);
    }
  return {points.begin(), points.end()};
}

std::span<const TimeVaryingGraph::AdjEntry> TimeVaryingGraph::adjacency(NodeId u) const {
  return adjacency_[node_index(u)];
}

TvgBuilder& TvgBuilder::horizon(Timestamp h) {
  require_non_negative(h, "horizon");
  g_.horizon_ = h;
  horizon_set_ = true;
  return *this;
}

TvgBuilder& TvgBuilder::add_node(NodeId u, std::string label) {
  if (g_.labels_.count(u)) throw std::invalid_argument("duplicate node id");
  if (label.empty()) label = std::to_string(u.value);
  if (g_.labels_reverse_.count(label)) throw std::invalid_argument("duplicate node label " + label);
  g_.nodes_.push_back(u);
  g_.labels_.emplace(u, label);
  g_.labels_reverse_.emplace(std::move(label), u);
  return *this;
}

TvgBuilder& TvgBuilder::add_edge(NodeId u, NodeId v, PresenceSchedule presence,
                                 LatencySpec latency) {
  Edge e = Edge::between(u, v);
  if (!g_.labels_.count(u) || !g_.labels_.count(v))
    throw std::invalid_argument("edge endpoint not added as a node");
  if (edge_index_.count(e)) throw std::invalid_argument("duplicate edge");
  edge_index_.emplace(e, g_.edges_.size());
  g_.edges_.push_back({e, std::move(presence), std::move(latency)});
  return *this;
}

TimeVaryingGraph TvgBuilder::build() {
  if (!horizon_set_) throw std::invalid_argument("a finite horizon is mandatory");
  std::sort(g_.nodes_.begin(), g_.nodes_.end());
  std::sort(g_.edges_.begin(), g_.edges_.end(),
            [](const TimeVaryingGraph::EdgeData& x, const TimeVaryingGraph::EdgeData& y) {
              return x.edge < y.edge;
            });
  for (const auto& d : g_.edges_)
    for (const Interval& iv : d.presence.intervals())
      if (iv.end > g_.horizon_)
        throw std::invalid_argument("presence interval extends past the horizon");

  g_.adjacency_.assign(g_.nodes_.size(), {});
  for (std::uint32_t i = 0; i < g_.edges_.size(); ++i) {
    const Edge e = g_.edges_[i].edge;
    g_.adjacency_[g_.node_index(e.a)].push_back({e.b, i});
    g_.adjacency_[g_.node_index(e.b)].push_back({e.a, i});
  }
  for (auto& adj : g_.adjacency_)
    std::sort(adj.begin(), adj.end(),
              [](const TimeVaryingGraph::AdjEntry& x, const TimeVaryingGraph::AdjEntry& y) {
                return x.neighbor < y.neighbor;
              });
  return std::move(g_);
}

}  // namespace relcomm
