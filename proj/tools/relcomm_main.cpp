#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "relcomm/experiment.hpp"
#include "relcomm/parallel.hpp"

namespace {

using namespace relcomm;

struct CommonFlags {
  std::string scenario = "menger";
  std::string trace;
  int grid_side = 10;
  int robots = 10;
  int steps = 5000;
  std::uint64_t seed = 1;
  std::int64_t tick_rate = 1;
  std::int64_t top_n = 0;
  std::string horizon;
  std::string out;
  int threads = 0;
  std::vector<std::string> pair;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--scenario", flags.scenario, "menger, grid or trace")
      ->check(CLI::IsMember({"menger", "grid", "trace"}));
  cmd->add_option("--trace", flags.trace, "contact-trace CSV path (scenario=trace)");
  cmd->add_option("--grid-side", flags.grid_side, "grid side length");
  cmd->add_option("--robots", flags.robots, "number of robots on the grid");
  cmd->add_option("--steps", flags.steps, "grid horizon in time units");
  cmd->add_option("--seed", flags.seed, "base seed for generated scenarios");
  cmd->add_option("--tick-rate", flags.tick_rate, "ticks per time unit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--top", flags.top_n, "keep only the N most sociable trace nodes");
  cmd->add_option("--horizon", flags.horizon, "clip trace contacts at this date (time units)");
  cmd->add_option("--out", flags.out, "write output to this file instead of stdout");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = all cores, 1 = serial)");
  cmd->add_option("--pair", flags.pair, "source and destination labels")->expected(2);
}

ScenarioSpec scenario_spec(const CommonFlags& flags) {
  ScenarioSpec spec;
  if (flags.scenario == "menger") spec.kind = ScenarioSpec::Kind::menger;
  if (flags.scenario == "grid") spec.kind = ScenarioSpec::Kind::grid;
  if (flags.scenario == "trace") {
    spec.kind = ScenarioSpec::Kind::trace;
    if (flags.trace.empty()) throw CLI::ValidationError("--trace is required for scenario=trace");
    spec.trace_path = flags.trace;
  }
  spec.tick = TickRate(flags.tick_rate);
  spec.grid.side = flags.grid_side;
  spec.grid.robots = flags.robots;
  spec.grid.steps = flags.steps;
  spec.grid.seed = flags.seed;
  spec.grid.tick = spec.tick;
  if (flags.top_n > 0) spec.top_n = static_cast<std::size_t>(flags.top_n);
  if (!flags.horizon.empty())
    spec.horizon_clip = Timestamp(parse_ticks(flags.horizon, spec.tick));
  return spec;
}

std::optional<std::pair<std::string, std::string>> pair_of(const CommonFlags& flags) {
  if (flags.pair.empty()) return std::nullopt;
  return std::make_pair(flags.pair[0], flags.pair[1]);
}

int threads_of(const CommonFlags& flags) {
  return flags.threads <= 0 ? hardware_threads() : flags.threads;
}

int write_output(const CommonFlags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(flags.out, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << flags.out << "\n";
    return 1;
  }
  out << text;
  return 0;
}

std::vector<ConditionMode> parse_modes(const std::vector<std::string>& names) {
  std::vector<ConditionMode> modes;
  for (const std::string& name : names) {
    auto mode = condition_mode_from_string(name);
    if (!mode) throw CLI::ValidationError("unknown mode " + name);
    modes.push_back(*mode);
  }
  return modes;
}

Placement parse_placement(const TimeVaryingGraph& g, const std::vector<std::string>& nodes,
                          const std::string& strategy, NodeId forge_target) {
  Placement placement;
  auto kind = strategy_kind_from_string(strategy);
  if (!kind) throw CLI::ValidationError("unknown strategy " + strategy);
  for (const std::string& label : nodes) {
    auto id = g.node_by_label(label);
    if (!id) throw CLI::ValidationError("unknown node label " + label);
    StrategySpec spec;
    spec.kind = *kind;
    if (*kind == StrategyKind::forge_source) {
      spec.forged_source = forge_target;
      spec.forged_payload = "forged";
    }
    placement.strategies.emplace(*id, spec);
  }
  return placement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliable point-to-point communication over time-varying networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "line-oriented key = value file mirroring the flags");

  CommonFlags analyze_flags, meantime_flags, simulate_flags, attack_flags;

  auto* analyze = app.add_subcommand(
      "analyze", "fraction of node pairs able to communicate within a window of each start");
  add_common(analyze, analyze_flags);
  std::vector<std::size_t> analyze_ks{1};
  std::vector<std::string> analyze_modes{"direct", "noncrypto", "crypto"};
  std::string analyze_window = "10", analyze_lattice = "5";
  analyze->add_option("--k", analyze_ks, "fault bounds to evaluate");
  analyze->add_option("--mode", analyze_modes, "modes to evaluate");
  analyze->add_option("--window", analyze_window, "communication window (time units)");
  analyze->add_option("--lattice", analyze_lattice, "start-date sampling step (time units)");

  auto* meantime = app.add_subcommand(
      "meantime", "mean condition-satisfaction time over seeded trials, per k and mode");
  add_common(meantime, meantime_flags);
  std::vector<std::size_t> meantime_ks{0, 1};
  std::vector<std::string> meantime_modes{"direct", "noncrypto", "crypto"};
  std::size_t meantime_runs = 100;
  meantime->add_option("--k", meantime_ks, "fault bounds to evaluate");
  meantime->add_option("--mode", meantime_modes, "modes to evaluate");
  meantime->add_option("--runs", meantime_runs, "seeded trials");

  auto* simulate = app.add_subcommand("simulate", "run the broadcast protocol once");
  add_common(simulate, simulate_flags);
  std::size_t simulate_k = 1;
  std::string simulate_mode = "noncrypto", simulate_strategy = "crash";
  std::vector<std::string> simulate_placement;
  bool simulate_worst = false;
  simulate->add_option("--k", simulate_k, "fault bound parameter");
  simulate->add_option("--mode", simulate_mode, "noncrypto or crypto")
      ->check(CLI::IsMember({"noncrypto", "crypto"}));
  simulate->add_option("--placement", simulate_placement, "labels of Byzantine nodes");
  simulate->add_option("--strategy", simulate_strategy, "strategy for the placed nodes");
  simulate->add_flag("--worst-placement", simulate_worst,
                     "search all placements of size <= k for the most harmful one");

  auto* attack = app.add_subcommand(
      "attack", "two-placement indistinguishability construction for the pair");
  add_common(attack, attack_flags);
  std::size_t attack_k = 1;
  std::string attack_payload = "x", attack_payload_alt = "y", attack_expect;
  attack->add_option("--k", attack_k, "fault bound parameter");
  attack->add_option("--payload", attack_payload, "message sent in scenario 1");
  attack->add_option("--payload-alt", attack_payload_alt, "message sent in scenario 2");
  attack->add_option("--expect", attack_expect, "fail unless the outcome matches")
      ->check(CLI::IsMember({"witness", "none"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      AnalyzeSpec spec;
      spec.scenario = scenario_spec(analyze_flags);
      spec.ks = analyze_ks;
      spec.modes = parse_modes(analyze_modes);
      spec.window = Duration(parse_ticks(analyze_window, spec.scenario.tick));
      spec.lattice_step = Duration(parse_ticks(analyze_lattice, spec.scenario.tick));
      spec.threads = threads_of(analyze_flags);
      return write_output(analyze_flags, cmd_analyze_csv(spec));
    }
    if (meantime->parsed()) {
      MeantimeSpec spec;
      spec.scenario = scenario_spec(meantime_flags);
      spec.ks = meantime_ks;
      spec.modes = parse_modes(meantime_modes);
      spec.runs = meantime_runs;
      spec.pair = pair_of(meantime_flags);
      spec.threads = threads_of(meantime_flags);
      return write_output(meantime_flags, cmd_meantime_csv(spec));
    }
    if (simulate->parsed()) {
      SimulateSpec spec;
      spec.scenario = scenario_spec(simulate_flags);
      spec.k = simulate_k;
      spec.mode = simulate_mode == "crypto" ? ProtocolMode::crypto : ProtocolMode::noncrypto;
      spec.pair = pair_of(simulate_flags);
      spec.search_worst_placement = simulate_worst;
      spec.threads = threads_of(simulate_flags);
      if (!simulate_placement.empty()) {
        const TimeVaryingGraph g = load_scenario(spec.scenario);
        const auto [p, q] = resolve_pair(g, spec.pair);
        (void)q;
        spec.placement = parse_placement(g, simulate_placement, simulate_strategy, p);
      }
      SimulateReport report = cmd_simulate(spec);
      int rc = write_output(simulate_flags, report.text);
      return rc != 0 ? rc : report.exit_code();
    }
    if (attack->parsed()) {
      AttackSpec spec;
      spec.scenario = scenario_spec(attack_flags);
      spec.k = attack_k;
      spec.pair = pair_of(attack_flags);
      spec.payload = attack_payload;
      spec.payload_alt = attack_payload_alt;
      if (!attack_expect.empty()) spec.expect_witness = attack_expect == "witness";
      AttackReport report = cmd_attack(spec);
      int rc = write_output(attack_flags, report.text);
      return rc != 0 ? rc : report.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
