#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcomm/adversary.hpp"
#include "relcomm/cut.hpp"
#include "relcomm/scenarios.hpp"
#include "relcomm/sim.hpp"

namespace relcomm {

// Experiment-facing scenario description, shared by the CLI subcommands.
struct ScenarioSpec {
  enum class Kind { menger, grid, trace };
  Kind kind = Kind::menger;
  GridSpec grid;
  std::string trace_path;
  TickRate tick{1};
  std::optional<std::size_t> top_n;               // sociability filter on traces
  std::optional<Timestamp> horizon_clip;          // clip trace contacts
};

TimeVaryingGraph load_scenario(const ScenarioSpec& spec);

// Resolves a pair of node labels against a graph; defaults to the two
// lowest-id nodes.
std::pair<NodeId, NodeId> resolve_pair(const TimeVaryingGraph& g,
                                       const std::optional<std::pair<std::string, std::string>>&
                                           labels);

// Fraction of ordered node pairs whose communication condition is met within
// `window` of each start date on the sampling lattice. CSV columns:
// start_time,mode,k,fraction — byte-stable, rows sorted by
// (start, mode, k).
struct AnalyzeSpec {
  ScenarioSpec scenario;
  std::vector<std::size_t> ks{1};
  std::vector<ConditionMode> modes{ConditionMode::direct, ConditionMode::noncrypto,
                                   ConditionMode::crypto};
  Duration window{10};
  Duration lattice_step{5};
  int threads = 1;
};
std::string cmd_analyze_csv(const AnalyzeSpec& spec);

// Mean condition-satisfaction time from t=0 over seeded trials, per k and
// mode. Trials that never satisfy the condition within the horizon are
// reported in the `failures` column and left out of the mean. CSV columns:
// k,mode,mean,failures,runs.
struct MeantimeSpec {
  ScenarioSpec scenario;
  std::size_t runs = 1;
  std::vector<std::size_t> ks{0, 1};
  std::vector<ConditionMode> modes{ConditionMode::direct, ConditionMode::noncrypto,
                                   ConditionMode::crypto};
  std::optional<std::pair<std::string, std::string>> pair;
  int threads = 1;
};
struct MeantimeCell {
  std::size_t k = 0;
  ConditionMode mode = ConditionMode::direct;
  std::int64_t satisfied_ticks = 0;  // sum over satisfied trials
  std::size_t satisfied = 0;
  std::size_t failures = 0;
};
std::vector<MeantimeCell> run_meantime(const MeantimeSpec& spec);
std::string cmd_meantime_csv(const MeantimeSpec& spec);

// One protocol run (optionally against the worst placement found for the
// pair); the report lists acceptances by label. Exit status 2 flags a safety
// violation, 0 otherwise.
struct SimulateSpec {
  ScenarioSpec scenario;
  std::size_t k = 0;
  ProtocolMode mode = ProtocolMode::noncrypto;
  std::optional<std::pair<std::string, std::string>> pair;
  Placement placement;
  bool search_worst_placement = false;
  int threads = 1;
};
struct SimulateReport {
  std::string text;
  bool safety_violation = false;
  int exit_code() const { return safety_violation ? 2 : 0; }
};
SimulateReport cmd_simulate(const SimulateSpec& spec);

// Two-placement indistinguishability construction for the pair. Exit status:
// 0 when the outcome matches `expect` (or no expectation given), 3 otherwise.
struct AttackSpec {
  ScenarioSpec scenario;
  std::size_t k = 1;
  std::optional<std::pair<std::string, std::string>> pair;
  std::string payload = "x";
  std::string payload_alt = "y";
  std::optional<bool> expect_witness;
};
struct AttackReport {
  std::string text;
  bool witness_found = false;
  bool witness_identical = false;
  int exit_code = 0;
};
AttackReport cmd_attack(const AttackSpec& spec);

}  // namespace relcomm
