#include "relcomm/adversary.hpp"

#include <algorithm>
#include <sstream>

#include "relcomm/parallel.hpp"

namespace relcomm {

namespace {

// Size-ascending, lexicographic within each size: deterministic search order.
void subsets_up_to(const std::vector<NodeId>& candidates, std::size_t max_size,
                   std::vector<std::vector<NodeId>>& out) {
  for (std::size_t size = 0; size <= max_size; ++size) {
    std::vector<NodeId> cur;
    auto gen = [&](auto&& self, std::size_t from) -> void {
      if (cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i + (size - cur.size()) <= candidates.size(); ++i) {
        cur.push_back(candidates[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    gen(gen, 0);
  }
}

// Worse outcome first; index breaks ties so the parallel reduction is
// deterministic.
bool worse(const PlacementOutcome& a, std::size_t ia, const PlacementOutcome& b,
           std::size_t ib) {
  if (a.safety_violation != b.safety_violation) return a.safety_violation;
  if (a.liveness_violation != b.liveness_violation) return a.liveness_violation;
  const std::int64_t ta = a.acceptance_time ? a.acceptance_time->ticks : -1;
  const std::int64_t tb = b.acceptance_time ? b.acceptance_time->ticks : -1;
  if (ta != tb) return ta > tb;  // later acceptance = more harm
  return ia < ib;
}

}  // namespace

PlacementSearchReport worst_case_placement(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                           std::size_t k, ProtocolMode mode,
                                           const WorstCaseOptions& opts) {
  if (!g.has_node(p) || !g.has_node(q)) throw std::invalid_argument("node not in graph");
  std::vector<NodeId> candidates;
  for (NodeId u : g.nodes())
    if (u != p && u != q) candidates.push_back(u);

  std::vector<std::vector<NodeId>> subsets;
  subsets_up_to(candidates, std::min(k, candidates.size()), subsets);

  std::vector<Placement> placements;
  for (const auto& subset : subsets) {
    if (subset.empty()) {
      placements.push_back({});
      continue;
    }
    for (StrategyKind kind : opts.family) {
      Placement placement;
      for (NodeId u : subset) {
        StrategySpec spec;
        spec.kind = kind;
        if (kind == StrategyKind::forge_source) {
          spec.forged_source = p;
          spec.forged_payload = opts.forged_payload;
        }
        placement.strategies.emplace(u, spec);
      }
      placements.push_back(std::move(placement));
    }
  }

  const bool over_budget = placements.size() > opts.budget;
  const std::size_t evaluate = std::min(placements.size(), opts.budget);

  std::map<NodeId, std::string> payloads;
  for (NodeId u : g.nodes()) payloads[u] = "m0:" + g.label(u);

  std::vector<PlacementOutcome> outcomes(evaluate);
  parallel_for(evaluate, opts.threads, [&](std::size_t i) {
    RunConfig config;
    config.graph = &g;
    config.k = k;
    config.mode = mode;
    config.placement = placements[i];
    config.broadcast_payloads = payloads;
    RunResult result = run(config);

    PlacementOutcome outcome;
    outcome.placement = placements[i];
    const std::set<NodeId> byz(placements[i].byzantine().begin(),
                               placements[i].byzantine().end());
    for (const AcceptanceEvent& a : result.acceptances) {
      if (byz.count(a.receiver) || byz.count(a.source)) continue;
      if (a.payload != payloads.at(a.source)) outcome.safety_violation = true;
    }
    outcome.acceptance_time = first_acceptance_time(result, p, q);
    outcome.liveness_violation = !outcome.acceptance_time.has_value();
    outcomes[i] = std::move(outcome);
  });

  PlacementSearchReport report;
  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].safety_violation) report.safety_violations++;
    if (outcomes[i].liveness_violation) report.liveness_violations++;
    if (worse(outcomes[i], i, outcomes[best], best)) best = i;
  }
  report.evaluated = outcomes.size();
  if (!outcomes.empty()) report.worst = outcomes[best];
  if (over_budget) throw PlacementBudgetExceeded(opts.budget, std::move(report));
  return report;
}

std::string PlacementSearchReport::text(const TimeVaryingGraph& g) const {
  std::ostringstream out;
  out << "placements evaluated: " << evaluated << "\n";
  out << "safety violations:    " << safety_violations << "\n";
  out << "liveness violations:  " << liveness_violations << "\n";
  out << "worst placement:      ";
  if (worst.placement.strategies.empty()) {
    out << "(none)\n";
  } else {
    for (const auto& [u, spec] : worst.placement.strategies)
      out << g.label(u) << ":" << to_string(spec.kind) << " ";
    out << "\n";
  }
  out << "worst outcome:        "
      << (worst.safety_violation    ? "safety violation"
          : worst.liveness_violation ? "liveness violation"
          : "accepted at t=" + std::to_string(worst.acceptance_time->ticks))
      << "\n";
  return out.str();
}

std::optional<AttackWitness> indistinguishability_attack(const TimeVaryingGraph& g, NodeId p,
                                                         NodeId q, std::size_t k,
                                                         const std::string& payload,
                                                         const std::string& payload_alt) {
  if (payload == payload_alt) throw std::invalid_argument("attack payloads must differ");
  const MinCutWitness cut = min_cut_with_witness(enumerate_path_sets(g, p, q).collection);
  if (cut.size.exceeds(2 * k)) return std::nullopt;

  AttackWitness witness;
  witness.cut = cut.cut;
  const std::size_t split = std::min(k, witness.cut.size());
  witness.group1.assign(witness.cut.begin(), witness.cut.begin() + static_cast<long>(split));
  witness.group2.assign(witness.cut.begin() + static_cast<long>(split), witness.cut.end());

  MirrorPairConfig config;
  config.graph = &g;
  config.k = k;
  config.mode = ProtocolMode::noncrypto;
  config.source = p;
  config.payloads = {payload, payload_alt};
  config.byzantine = {witness.group1, witness.group2};
  config.observed = {q};
  auto results = run_mirror_pair(config);

  witness.transcript1 = transcript_text(results[0].transcripts[q]);
  witness.transcript2 = transcript_text(results[1].transcripts[q]);
  witness.identical = witness.transcript1 == witness.transcript2;
  return witness;
}

std::string AttackWitness::report(const TimeVaryingGraph& g) const {
  auto names = [&](const std::vector<NodeId>& nodes) {
    std::string out;
    for (NodeId u : nodes) out += (out.empty() ? "" : ",") + g.label(u);
    return out.empty() ? "(none)" : out;
  };
  std::ostringstream out;
  out << "cut: {" << names(cut) << "}\n";
  out << "scenario 1 byzantine: {" << names(group1) << "}\n";
  out << "scenario 2 byzantine: {" << names(group2) << "}\n";
  out << "scenario 1 observations at receiver:\n" << transcript1;
  out << "scenario 2 observations at receiver:\n" << transcript2;
  out << "transcripts identical: " << (identical ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace relcomm
