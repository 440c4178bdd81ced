#include "relcomm/experiment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "relcomm/parallel.hpp"

namespace relcomm {

namespace {

ContactTrace clip_trace(ContactTrace trace, Timestamp horizon) {
  ContactTrace out;
  for (ContactRow& row : trace.rows) {
    if (row.start > horizon) continue;
    row.end = std::min(row.end, horizon);
    out.rows.push_back(std::move(row));
  }
  return out;
}

int mode_order(ConditionMode m) {
  switch (m) {
    case ConditionMode::direct: return 0;
    case ConditionMode::noncrypto: return 1;
    case ConditionMode::crypto: return 2;
  }
  return 3;
}

}  // namespace

TimeVaryingGraph load_scenario(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioSpec::Kind::menger:
      return menger_fixture();
    case ScenarioSpec::Kind::grid:
      return grid_walk(spec.grid);
    case ScenarioSpec::Kind::trace: {
      ContactTrace trace = parse_contact_trace_file(spec.trace_path, spec.tick);
      if (spec.top_n) trace = sociability_filter(trace, *spec.top_n);
      if (spec.horizon_clip) trace = clip_trace(std::move(trace), *spec.horizon_clip);
      return from_contact_trace(trace);
    }
  }
  throw std::invalid_argument("unknown scenario kind");
}

std::pair<NodeId, NodeId> resolve_pair(
    const TimeVaryingGraph& g,
    const std::optional<std::pair<std::string, std::string>>& labels) {
  if (!labels) {
    if (g.nodes().size() < 2) throw std::invalid_argument("graph has fewer than two nodes");
    return {g.nodes()[0], g.nodes()[1]};
  }
  auto p = g.node_by_label(labels->first);
  auto q = g.node_by_label(labels->second);
  if (!p || !q)
    throw std::invalid_argument("unknown node label " +
                                (!p ? labels->first : labels->second));
  if (*p == *q) throw std::invalid_argument("pair endpoints must differ");
  return {*p, *q};
}

std::string cmd_analyze_csv(const AnalyzeSpec& spec) {
  if (spec.window.ticks < 0) throw std::invalid_argument("window must be >= 0");
  if (spec.lattice_step.ticks <= 0) throw std::invalid_argument("lattice step must be > 0");
  const TimeVaryingGraph g = load_scenario(spec.scenario);

  std::vector<Timestamp> starts;
  for (Timestamp s(0); s <= g.horizon(); s = s + spec.lattice_step) starts.push_back(s);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u : g.nodes())
    for (NodeId v : g.nodes())
      if (u != v) pairs.emplace_back(u, v);

  // satisfied[start][mode][k] counts pairs meeting the condition in
  // [start, start + window].
  std::vector<std::vector<std::vector<std::size_t>>> satisfied(
      starts.size(), std::vector<std::vector<std::size_t>>(
                         spec.modes.size(), std::vector<std::size_t>(spec.ks.size(), 0)));

  const std::size_t jobs = starts.size() * pairs.size();
  std::vector<std::vector<std::vector<std::uint8_t>>> hits(
      jobs, std::vector<std::vector<std::uint8_t>>(spec.modes.size(),
                                                   std::vector<std::uint8_t>(spec.ks.size(), 0)));
  parallel_for(jobs, spec.threads, [&](std::size_t job) {
    const std::size_t si = job / pairs.size();
    const auto [u, v] = pairs[job % pairs.size()];
    EnumerationOptions opts;
    opts.start = starts[si];
    const PathSetEnumeration e = enumerate_path_sets(g, u, v, opts);
    const Timestamp deadline = starts[si] + spec.window;
    for (std::size_t mi = 0; mi < spec.modes.size(); ++mi)
      for (std::size_t ki = 0; ki < spec.ks.size(); ++ki)
        hits[job][mi][ki] = condition_time_over(e, g.horizon(), spec.ks[ki], spec.modes[mi],
                                                deadline)
                                .has_value();
  });
  for (std::size_t job = 0; job < jobs; ++job)
    for (std::size_t mi = 0; mi < spec.modes.size(); ++mi)
      for (std::size_t ki = 0; ki < spec.ks.size(); ++ki)
        satisfied[job / pairs.size()][mi][ki] += hits[job][mi][ki];

  // Canonical row order: start, then mode, then k.
  std::vector<std::size_t> mode_idx(spec.modes.size());
  for (std::size_t i = 0; i < mode_idx.size(); ++i) mode_idx[i] = i;
  std::sort(mode_idx.begin(), mode_idx.end(), [&](std::size_t x, std::size_t y) {
    return mode_order(spec.modes[x]) < mode_order(spec.modes[y]);
  });
  std::vector<std::size_t> k_idx(spec.ks.size());
  for (std::size_t i = 0; i < k_idx.size(); ++i) k_idx[i] = i;
  std::sort(k_idx.begin(), k_idx.end(),
            [&](std::size_t x, std::size_t y) { return spec.ks[x] < spec.ks[y]; });

  std::ostringstream out;
  out << "start_time,mode,k,fraction\n";
  for (std::size_t si = 0; si < starts.size(); ++si)
    for (std::size_t mi : mode_idx)
      for (std::size_t ki : k_idx)
        out << format_ticks(starts[si].ticks, spec.scenario.tick) << ","
            << to_string(spec.modes[mi]) << "," << spec.ks[ki] << ","
            << format_ratio(static_cast<std::int64_t>(satisfied[si][mi][ki]),
                            static_cast<std::int64_t>(pairs.size()), 4)
            << "\n";
  return out.str();
}

std::vector<MeantimeCell> run_meantime(const MeantimeSpec& spec) {
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (spec.scenario.kind == ScenarioSpec::Kind::menger)
    throw std::invalid_argument("meantime needs a grid or trace scenario");

  // A trace is a fixed network: one trial tells the whole story.
  const std::size_t runs =
      spec.scenario.kind == ScenarioSpec::Kind::trace ? 1 : spec.runs;

  struct TrialResult {
    std::vector<std::optional<Timestamp>> times;  // per (k, mode) flattened
  };
  std::vector<TrialResult> trials(runs);
  const std::size_t cells = spec.ks.size() * spec.modes.size();

  parallel_for(runs, spec.threads, [&](std::size_t trial) {
    ScenarioSpec scenario = spec.scenario;
    if (scenario.kind == ScenarioSpec::Kind::grid)
      scenario.grid.seed = Rng(spec.scenario.grid.seed).fork(trial).next();
    const TimeVaryingGraph g = load_scenario(scenario);
    const auto [p, q] = resolve_pair(g, spec.pair);
    const PathSetEnumeration e = enumerate_path_sets(g, p, q);
    trials[trial].times.resize(cells);
    for (std::size_t ki = 0; ki < spec.ks.size(); ++ki)
      for (std::size_t mi = 0; mi < spec.modes.size(); ++mi)
        trials[trial].times[ki * spec.modes.size() + mi] =
            condition_time_over(e, g.horizon(), spec.ks[ki], spec.modes[mi]);
  });

  std::vector<MeantimeCell> out;
  for (std::size_t ki = 0; ki < spec.ks.size(); ++ki)
    for (std::size_t mi = 0; mi < spec.modes.size(); ++mi) {
      MeantimeCell cell;
      cell.k = spec.ks[ki];
      cell.mode = spec.modes[mi];
      for (std::size_t trial = 0; trial < runs; ++trial) {
        const auto& t = trials[trial].times[ki * spec.modes.size() + mi];
        if (t) {
          cell.satisfied_ticks += t->ticks;
          cell.satisfied++;
        } else {
          cell.failures++;
        }
      }
      out.push_back(cell);
    }
  return out;
}

std::string cmd_meantime_csv(const MeantimeSpec& spec) {
  std::vector<MeantimeCell> cells = run_meantime(spec);
  const std::size_t runs =
      spec.scenario.kind == ScenarioSpec::Kind::trace ? 1 : spec.runs;
  std::sort(cells.begin(), cells.end(), [&](const MeantimeCell& x, const MeantimeCell& y) {
    if (x.k != y.k) return x.k < y.k;
    return mode_order(x.mode) < mode_order(y.mode);
  });
  std::ostringstream out;
  out << "k,mode,mean,failures,runs\n";
  for (const MeantimeCell& cell : cells) {
    out << cell.k << "," << to_string(cell.mode) << ",";
    if (cell.satisfied == 0)
      out << "none";
    else
      out << format_ratio(cell.satisfied_ticks,
                          static_cast<std::int64_t>(cell.satisfied) *
                              spec.scenario.tick.per_unit,
                          4);
    out << "," << cell.failures << "," << runs << "\n";
  }
  return out.str();
}

SimulateReport cmd_simulate(const SimulateSpec& spec) {
  const TimeVaryingGraph g = load_scenario(spec.scenario);
  const auto [p, q] = resolve_pair(g, spec.pair);

  Placement placement = spec.placement;
  std::ostringstream text;
  if (spec.search_worst_placement) {
    WorstCaseOptions opts;
    opts.threads = spec.threads;
    PlacementSearchReport report = worst_case_placement(g, p, q, spec.k, spec.mode, opts);
    text << report.text(g) << "\n";
    placement = report.worst.placement;
  }

  std::map<NodeId, std::string> payloads;
  for (NodeId u : g.nodes()) payloads[u] = "m0:" + g.label(u);

  RunConfig config;
  config.graph = &g;
  config.k = spec.k;
  config.mode = spec.mode;
  config.placement = placement;
  config.broadcast_payloads = payloads;
  const RunResult result = run(config);

  SimulateReport report;
  const std::set<NodeId> byz(placement.byzantine().begin(), placement.byzantine().end());
  text << "mode=" << (spec.mode == ProtocolMode::noncrypto ? "noncrypto" : "crypto")
       << " k=" << spec.k << " pair=" << g.label(p) << "->" << g.label(q) << "\n";
  text << "byzantine:";
  if (byz.empty()) text << " (none)";
  for (NodeId u : byz) text << " " << g.label(u) << ":" << to_string(placement.strategies.at(u).kind);
  text << "\n";
  text << "acceptances:\n";
  for (const AcceptanceEvent& a : result.acceptances) {
    if (byz.count(a.receiver)) continue;
    const bool genuine = byz.count(a.source) || a.payload == payloads.at(a.source);
    if (!genuine) report.safety_violation = true;
    text << "  " << g.label(a.receiver) << " accepts (" << g.label(a.source) << ", "
         << a.payload << ") at t=" << format_ticks(a.time.ticks, spec.scenario.tick)
         << (genuine ? "" : "  [SAFETY VIOLATION]") << "\n";
  }
  auto accepted = first_acceptance_time(result, p, q);
  text << "pair outcome: ";
  if (accepted)
    text << "accepted at t=" << format_ticks(accepted->ticks, spec.scenario.tick) << "\n";
  else
    text << "not accepted within the horizon\n";
  text << "messages sent=" << result.messages_sent << " delivered=" << result.messages_delivered
       << " dropped=" << result.messages_dropped << "\n";
  report.text = text.str();
  return report;
}

AttackReport cmd_attack(const AttackSpec& spec) {
  const TimeVaryingGraph g = load_scenario(spec.scenario);
  const auto [p, q] = resolve_pair(g, spec.pair);

  AttackReport report;
  std::ostringstream text;
  auto witness = indistinguishability_attack(g, p, q, spec.k, spec.payload, spec.payload_alt);
  text << "pair=" << g.label(p) << "->" << g.label(q) << " k=" << spec.k << "\n";
  if (witness) {
    report.witness_found = true;
    report.witness_identical = witness->identical;
    text << witness->report(g);
  } else {
    text << "no witness: the pair's dynamic min cut exceeds " << 2 * spec.k << "\n";
  }
  if (spec.expect_witness && *spec.expect_witness != report.witness_found) report.exit_code = 3;
  report.text = text.str();
  return report;
}

}  // namespace relcomm
