#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relcomm/time.hpp"

namespace relcomm {

struct NodeId {
  std::uint64_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint64_t v) : value(v) {}

  auto operator<=>(const NodeId&) const = default;
};

// Undirected edge, stored with endpoints in ascending order. Contacts are
// mutual in every scenario here; message direction lives in the records, not
// in the graph.
struct Edge {
  NodeId a, b;

  static Edge between(NodeId u, NodeId v) {
    if (u == v) throw std::invalid_argument("edge endpoints must be distinct");
    return u < v ? Edge{u, v} : Edge{v, u};
  }

  auto operator<=>(const Edge&) const = default;
};

struct Interval {
  Timestamp start, end;  // closed on both ends

  auto operator<=>(const Interval&) const = default;
};

// Normalized union of closed intervals: sorted, pairwise disjoint, merged
// wherever two inputs overlap or touch at a shared endpoint. Intervals that
// leave a gap in continuous time ([2,5] and [6,9]) stay separate: the open
// stretch between them is genuinely absent.
class PresenceSchedule {
 public:
  PresenceSchedule() = default;
  static PresenceSchedule from_intervals(std::vector<Interval> raw);

  bool contains(Timestamp t) const;
  // True iff [t, t+d] lies inside a single interval.
  bool covers(Timestamp t, Duration d) const;
  // Start of the earliest interval whose coverage of [x, x+d] is possible with
  // x >= from; nullopt if none. Helper for temporal search.
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<Interval> intervals_;
};

// Per-edge crossing time: either constant or a right-continuous step function.
// Step specs must start at t=0 so evaluation is total.
class LatencySpec {
 public:
  static LatencySpec constant(Duration d);
  static LatencySpec steps(std::vector<std::pair<Timestamp, Duration>> steps);

  Duration at(Timestamp t) const;
  bool is_constant() const { return steps_.size() == 1; }
  const std::vector<std::pair<Timestamp, Duration>>& step_points() const { return steps_; }

 private:
  std::vector<std::pair<Timestamp, Duration>> steps_;  // sorted by time
};

class TvgBuilder;

// Immutable once built; safe to share across threads.
class TimeVaryingGraph {
 public:
  struct EdgeData {
    Edge edge;
    PresenceSchedule presence;
    LatencySpec latency;
  };

  const std::vector<NodeId>& nodes() const { return nodes_; }
  Timestamp horizon() const { return horizon_; }
  bool has_node(NodeId u) const;
  bool has_edge(Edge e) const;
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<EdgeData>& edge_data() const { return edges_; }

  const std::string& label(NodeId u) const;
  std::optional<NodeId> node_by_label(const std::string& label) const;

  // Presence of e at date t. Unknown edge or t past the horizon is an error.
  bool edge_present(Edge e, Timestamp t) const;
  // True iff e stays present through the whole window [t, t+d].
  bool present_throughout(Edge e, Timestamp t, Duration d) const;
  // Latency function value at t. Unknown edge is an error.
  Duration latency_at(Edge e, Timestamp t) const;
  // All v with edge_present((u,v), t); sorted. Unknown node is an error.
  std::vector<NodeId> neighbors_at(NodeId u, Timestamp t) const;
  // Deduplicated, sorted start/end points of intervals on edges incident to u.
  std::vector<Timestamp> topology_change_times(NodeId u) const;

  // Lookup without the public-precondition checks, for algorithm internals.
  const EdgeData* find_edge(Edge e) const;
  struct AdjEntry {
    NodeId neighbor;
    std::uint32_t edge_index;
  };
  std::span<const AdjEntry> adjacency(NodeId u) const;

 private:
  friend class TvgBuilder;
  std::vector<NodeId> nodes_;                      // sorted
  std::vector<EdgeData> edges_;                    // sorted by edge
  std::vector<std::vector<AdjEntry>> adjacency_;   // parallel to nodes_
  std::map<NodeId, std::string> labels_;
  std::map<std::string, NodeId> labels_reverse_;
  Timestamp horizon_{0};

  std::size_t node_index(NodeId u) const;
};

class TvgBuilder {
 public:
  TvgBuilder& horizon(Timestamp h);
  TvgBuilder& add_node(NodeId u, std::string label = {});
  TvgBuilder& add_edge(NodeId u, NodeId v, PresenceSchedule presence,
                       LatencySpec latency = LatencySpec::constant(Duration(0)));
  TimeVaryingGraph build();

 private:
  TimeVaryingGraph g_;
  std::map<Edge, std::size_t> edge_index_;
  bool horizon_set_ = false;
};

}  // namespace relcomm
