#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relcomm/rng.hpp"
#include "relcomm/tvg.hpp"

namespace relcomm {

// Two-step network over {p, a, b, c, q} whose relay structure defeats the
// static max-flow intuition: three relay pairs {a,c}, {c,b}, {a,b} connect p
// to q, cutting them costs two nodes, yet no two of the paths are internally
// disjoint. Validated against the path-set enumeration at construction.
TimeVaryingGraph menger_fixture();

struct GridSpec {
  int side = 10;        // vertices per grid edge
  int robots = 10;
  int steps = 5000;     // horizon in whole time units
  std::uint64_t seed = 1;
  TickRate tick{1};
};

// Robots walk a side x side grid: each time unit, uniformly stay or step to a
// 4-neighbor. Two robots sharing a vertex at date t are connected for that
// unit slot with zero latency, so same-slot relay chains are possible.
TimeVaryingGraph grid_walk(const GridSpec& spec);

// Movement options from a 1-indexed cell, the stay choice included; exposed
// for tests (a corner offers 3, an interior cell 5).
std::vector<std::pair<int, int>> grid_move_choices(int side, std::pair<int, int> cell);

struct ContactRow {
  std::string u, v;
  Timestamp start, end;
  Duration latency;

  auto operator<=>(const ContactRow&) const = default;
};

// Contact-trace rows; the text form is CSV with a mandatory header
// `node_u,node_v,t_start,t_end[,latency]`, decimal times, `#` comments.
struct ContactTrace {
  std::vector<ContactRow> rows;
};

ContactTrace parse_contact_trace(std::istream& in, TickRate rate = TickRate(1));
ContactTrace parse_contact_trace_file(const std::string& path, TickRate rate = TickRate(1));
std::string format_contact_trace(const ContactTrace& trace, TickRate rate = TickRate(1));

// Builds the graph: overlapping rows merge into normalized presence, each
// edge carries one constant latency (conflicting latencies are an error).
// Node ids are assigned in order of first appearance; labels are preserved.
TimeVaryingGraph from_contact_trace(const ContactTrace& trace);

// Inverse of from_contact_trace on normalized traces: rows sorted by
// (u, v, start), one row per presence interval.
ContactTrace export_contact_trace(const TimeVaryingGraph& g);

// Keeps rows whose BOTH endpoints rank in the top_n by total row count;
// ranking ties go to the node interned first (lower id).
ContactTrace sociability_filter(const ContactTrace& trace, std::size_t top_n);

}  // namespace relcomm
