#include "relcomm/scenarios.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "relcomm/cut.hpp"
#include "relcomm/temporal_paths.hpp"

namespace relcomm {

TimeVaryingGraph menger_fixture() {
  const NodeId p(0), a(1), b(2), c(3), q(4);
  auto step1 = [] {
    return PresenceSchedule::from_intervals({{Timestamp(1), Timestamp(1)}});
  };
  auto step2 = [] {
    return PresenceSchedule::from_intervals({{Timestamp(2), Timestamp(2)}});
  };
  TvgBuilder builder;
  builder.horizon(Timestamp(2))
      .add_node(p, "p")
      .add_node(a, "a")
      .add_node(b, "b")
      .add_node(c, "c")
      // Step 1 carries (p,a,c,q) as a zero-latency chain; step 2 carries
      // (p,c,b,q) and finishes (p,a,b,q). p-c opens only after c-q has
      // closed, so no single relay ever suffices.
      .add_node(q, "q")
      .add_edge(p, a, step1())
      .add_edge(a, c, step1())
      .add_edge(c, q, step1())
      .add_edge(p, c, step2())
      .add_edge(c, b, step2())
      .add_edge(b, q, step2())
      .add_edge(a, b, step2());
  TimeVaryingGraph g = builder.build();

  const PathSetEnumeration e = enumerate_path_sets(g, p, q);
  const PathSetCollection expected = PathSetCollection::normalized({{a, c}, {c, b}, {a, b}});
  if (!(e.collection.sets == expected.sets))
    throw std::logic_error("menger fixture path sets changed");
  if (!(min_cut(e.collection) == CutSize::finite(2)))
    throw std::logic_error("menger fixture cut size changed");
  if (max_disjoint_paths(g, p, q) != 1)
    throw std::logic_error("menger fixture disjoint-path count changed");
  return g;
}

std::vector<std::pair<int, int>> grid_move_choices(int side, std::pair<int, int> cell) {
  const auto [i, j] = cell;
  if (i < 1 || i > side || j < 1 || j > side)
    throw std::invalid_argument("cell outside the grid");
  std::vector<std::pair<int, int>> choices{{i, j}};
  if (i > 1) choices.push_back({i - 1, j});
  if (i < side) choices.push_back({i + 1, j});
  if (j > 1) choices.push_back({i, j - 1});
  if (j < side) choices.push_back({i, j + 1});
  return choices;
}

TimeVaryingGraph grid_walk(const GridSpec& spec) {
  if (spec.side < 1) throw std::invalid_argument("grid side must be >= 1");
  if (spec.robots < 2) throw std::invalid_argument("need at least two robots");
  if (spec.steps < 0) throw std::invalid_argument("steps must be >= 0");

  Rng rng(spec.seed);
  const int n = spec.robots;
  std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(n));
  for (auto& cell : pos) {
    cell.first = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.side)));
    cell.second = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.side)));
  }

  // Contact slot for co-location at date t: [t, t+1) in continuous time,
  // which is the closed tick range [t*R, t*R + R - 1].
  const std::int64_t R = spec.tick.per_unit;
  std::map<Edge, std::vector<Interval>> contacts;
  auto record_contacts = [&](std::int64_t t) {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (pos[static_cast<std::size_t>(x)] == pos[static_cast<std::size_t>(y)])
          contacts[Edge::between(NodeId(static_cast<std::uint64_t>(x)),
                                 NodeId(static_cast<std::uint64_t>(y)))]
              .push_back({Timestamp(t * R), Timestamp(t * R + R - 1)});
  };

  record_contacts(0);
  for (int t = 1; t <= spec.steps; ++t) {
    for (auto& cell : pos) {
      const auto choices = grid_move_choices(spec.side, cell);
      cell = choices[rng.below(choices.size())];
    }
    record_contacts(t);
  }

  TvgBuilder builder;
  builder.horizon(Timestamp(static_cast<std::int64_t>(spec.steps) * R + R - 1));
  for (int i = 0; i < n; ++i)
    builder.add_node(NodeId(static_cast<std::uint64_t>(i)), "r" + std::to_string(i));
  for (auto& [edge, intervals] : contacts)
    builder.add_edge(edge.a, edge.b, PresenceSchedule::from_intervals(std::move(intervals)),
                     LatencySpec::constant(Duration(0)));
  return builder.build();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim spaces
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
  }
  return fields;
}

}  // namespace

ContactTrace parse_contact_trace(std::istream& in, TickRate rate) {
  ContactTrace trace;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      const auto fields = split_csv(line);
      if (fields.size() < 4 || fields[0] != "node_u" || fields[1] != "node_v")
        throw std::invalid_argument("contact trace must start with the header row");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4 && fields.size() != 5)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 4 or 5 fields");
    ContactRow row;
    row.u = fields[0];
    row.v = fields[1];
    if (row.u.empty() || row.v.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": empty node name");
    if (row.u == row.v)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": self contact");
    row.start = Timestamp(parse_ticks(fields[2], rate));
    row.end = Timestamp(parse_ticks(fields[3], rate));
    if (row.end < row.start)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": start after end");
    row.latency = fields.size() == 5 ? Duration(parse_ticks(fields[4], rate)) : Duration(0);
    trace.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("contact trace is empty (header required)");
  return trace;
}

ContactTrace parse_contact_trace_file(const std::string& path, TickRate rate) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace file " + path);
  return parse_contact_trace(in, rate);
}

std::string format_contact_trace(const ContactTrace& trace, TickRate rate) {
  std::ostringstream out;
  out << "node_u,node_v,t_start,t_end,latency\n";
  for (const ContactRow& row : trace.rows)
    out << row.u << "," << row.v << "," << format_ticks(row.start.ticks, rate) << ","
        << format_ticks(row.end.ticks, rate) << "," << format_ticks(row.latency.ticks, rate)
        << "\n";
  return out.str();
}

TimeVaryingGraph from_contact_trace(const ContactTrace& trace) {
  std::map<std::string, NodeId> ids;
  std::vector<std::string> order;
  auto intern = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const NodeId id(ids.size());
    ids.emplace(name, id);
    order.push_back(name);
    return id;
  };

  std::map<Edge, std::vector<Interval>> presence;
  std::map<Edge, Duration> latency;
  Timestamp horizon(0);
  for (const ContactRow& row : trace.rows) {
    const Edge e = Edge::between(intern(row.u), intern(row.v));
    presence[e].push_back({row.start, row.end});
    auto [it, inserted] = latency.emplace(e, row.latency);
    if (!inserted && it->second != row.latency)
      throw std::invalid_argument("conflicting latencies for contact " + row.u + "," + row.v);
    horizon = std::max(horizon, row.end);
    horizon = std::max(horizon, row.start + row.latency);
  }

  TvgBuilder builder;
  builder.horizon(horizon);
  for (std::size_t i = 0; i < order.size(); ++i) builder.add_node(NodeId(i), order[i]);
  for (auto& [edge, intervals] : presence)
    builder.add_edge(edge.a, edge.b, PresenceSchedule::from_intervals(std::move(intervals)),
                     LatencySpec::constant(latency.at(edge)));
  return builder.build();
}

ContactTrace export_contact_trace(const TimeVaryingGraph& g) {
  ContactTrace trace;
  for (const auto& data : g.edge_data()) {
    if (!data.latency.is_constant())
      throw std::invalid_argument("only constant-latency graphs export to contact traces");
    for (const Interval& iv : data.presence.intervals())
      trace.rows.push_back({g.label(data.edge.a), g.label(data.edge.b), iv.start, iv.end,
                            data.latency.at(Timestamp(0))});
  }
  std::sort(trace.rows.begin(), trace.rows.end());
  return trace;
}

ContactTrace sociability_filter(const ContactTrace& trace, std::size_t top_n) {
  if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
  std::map<std::string, NodeId> ids;
  std::map<std::string, std::size_t> counts;
  auto intern = [&](const std::string& name) {
    ids.emplace(name, NodeId(ids.size()));
  };
  for (const ContactRow& row : trace.rows) {
    intern(row.u);
    intern(row.v);
    counts[row.u]++;
    counts[row.v]++;
  }

  std::vector<std::string> ranked;
  for (const auto& [name, _] : counts) ranked.push_back(name);
  std::sort(ranked.begin(), ranked.end(), [&](const std::string& x, const std::string& y) {
    if (counts[x] != counts[y]) return counts[x] > counts[y];
    return ids.at(x) < ids.at(y);
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
  const std::set<std::string> keep(ranked.begin(), ranked.end());

  ContactTrace out;
  for (const ContactRow& row : trace.rows)
    if (keep.count(row.u) && keep.count(row.v)) out.rows.push_back(row);
  return out;
}

}  // namespace relcomm
