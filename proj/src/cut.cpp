#include "relcomm/cut.hpp"

#include <algorithm>
#include <set>

namespace relcomm {

bool is_cut(const PathSetCollection& omega, const std::vector<NodeId>& c) {
  std::set<NodeId> chosen(c.begin(), c.end());
  for (const auto& s : omega.sets) {
    bool hit = false;
    for (NodeId u : s)
      if (chosen.count(u)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

namespace {

// Collection prepared for search: empty-set detection done, dominated
// supersets removed (hitting a subset hits its supersets, so they never
// constrain the optimum).
struct Prepared {
  bool has_empty = false;
  std::vector<std::vector<NodeId>> sets;
};

Prepared prepare(const PathSetCollection& omega) {
  Prepared p;
  for (const auto& s : omega.sets) {
    if (s.empty()) {
      p.has_empty = true;
      return p;
    }
  }
  // Sets are sorted by size, so any dominator of sets[i] precedes it.
  for (const auto& s : omega.sets) {
    bool dominated = false;
    for (const auto& t : p.sets) {
      if (std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) p.sets.push_back(s);
  }
  return p;
}

struct Search {
  const std::vector<std::vector<NodeId>>& sets;
  std::set<NodeId> chosen;
  std::size_t best;
  std::vector<NodeId> best_cut;
  bool track_witness;

  bool hits(const std::vector<NodeId>& s) const {
    for (NodeId u : s)
      if (chosen.count(u)) return true;
    return false;
  }

  // Index of the smallest unhit set, or npos. Ties go to the earlier set in
  // canonical order, keeping the search (and any witness) deterministic.
  std::size_t pick_unhit() const {
    std::size_t pick = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (hits(sets[i])) continue;
      if (pick == static_cast<std::size_t>(-1) || sets[i].size() < sets[pick].size()) pick = i;
    }
    return pick;
  }

  // Count of pairwise-disjoint unhit sets (greedy) — each needs its own
  // element, so this lower-bounds the remaining cost.
  std::size_t disjoint_lower_bound() const {
    std::set<NodeId> used;
    std::size_t count = 0;
    for (const auto& s : sets) {
      if (hits(s)) continue;
      bool overlap = false;
      for (NodeId u : s)
        if (used.count(u)) {
          overlap = true;
          break;
        }
      if (overlap) continue;
      used.insert(s.begin(), s.end());
      ++count;
    }
    return count;
  }

  void run() {
    if (chosen.size() + disjoint_lower_bound() >= best) return;
    const std::size_t pick = pick_unhit();
    if (pick == static_cast<std::size_t>(-1)) {
      best = chosen.size();
      if (track_witness) best_cut.assign(chosen.begin(), chosen.end());
      return;
    }
    for (NodeId u : sets[pick]) {  // elements already in NodeId order
      chosen.insert(u);
      run();
      chosen.erase(u);
    }
  }

  // Depth-capped decision search: can the unhit sets be hit with `budget`
  // more elements?
  bool hittable(std::size_t budget) {
    const std::size_t pick = pick_unhit();
    if (pick == static_cast<std::size_t>(-1)) return true;
    if (budget == 0 || disjoint_lower_bound() > budget) return false;
    for (NodeId u : sets[pick]) {
      chosen.insert(u);
      const bool ok = hittable(budget - 1);
      chosen.erase(u);
      if (ok) return true;
    }
    return false;
  }
};

}  // namespace

MinCutWitness min_cut_with_witness(const PathSetCollection& omega) {
  Prepared p = prepare(omega);
  if (p.has_empty) return {CutSize::unbounded(), {}};
  if (p.sets.empty()) return {CutSize::finite(0), {}};
  // Every ground element is a valid (crude) starting cut.
  std::set<NodeId> ground;
  for (const auto& s : p.sets) ground.insert(s.begin(), s.end());
  Search search{p.sets, {}, ground.size() + 1, {}, true};
  search.run();
  return {CutSize::finite(search.best), std::move(search.best_cut)};
}

CutSize min_cut(const PathSetCollection& omega) { return min_cut_with_witness(omega).size; }

bool min_cut_exceeds(const PathSetCollection& omega, std::size_t k) {
  Prepared p = prepare(omega);
  if (p.has_empty) return true;  // infinite
  if (p.sets.empty()) return false;  // min cut of an empty collection is 0
  Search search{p.sets, {}, 0, {}, false};
  return !search.hittable(k);
}

CutSize dyn_min_cut(const TimeVaryingGraph& g, NodeId p, NodeId q) {
  return min_cut(enumerate_path_sets(g, p, q).collection);
}

namespace {

bool severed(const TimeVaryingGraph& g, NodeId p, NodeId q, const std::vector<NodeId>& removed) {
  return !earliest_arrival(g, p, q, Timestamp(0), removed).has_value();
}

bool any_subset_severs(const TimeVaryingGraph& g, NodeId p, NodeId q,
                       const std::vector<NodeId>& candidates, std::size_t size,
                       std::size_t from, std::vector<NodeId>& current) {
  if (current.size() == size) return severed(g, p, q, current);
  for (std::size_t i = from; i < candidates.size(); ++i) {
    current.push_back(candidates[i]);
    if (any_subset_severs(g, p, q, candidates, size, i + 1, current)) return true;
    current.pop_back();
  }
  return false;
}

}  // namespace

CutSize dyn_min_cut_by_removal(const TimeVaryingGraph& g, NodeId p, NodeId q) {
  if (p == q) throw std::invalid_argument("source and target must differ");
  std::vector<NodeId> candidates;
  for (NodeId u : g.nodes())
    if (u != p && u != q) candidates.push_back(u);
  // Removing everything leaves only the direct edge; if that still connects,
  // no finite removal ever severs the pair.
  if (!severed(g, p, q, candidates)) return CutSize::unbounded();
  for (std::size_t size = 0; size <= candidates.size(); ++size) {
    std::vector<NodeId> current;
    if (any_subset_severs(g, p, q, candidates, size, 0, current)) return CutSize::finite(size);
  }
  return CutSize::unbounded();  // unreachable: the full set severed above
}

bool feasible_noncrypto(const TimeVaryingGraph& g, NodeId p, NodeId q, std::size_t k) {
  return dyn_min_cut(g, p, q).exceeds(2 * k);
}

bool feasible_crypto(const TimeVaryingGraph& g, NodeId p, NodeId q, std::size_t k) {
  return dyn_min_cut(g, p, q).exceeds(k);
}

const char* to_string(ConditionMode m) {
  switch (m) {
    case ConditionMode::direct: return "direct";
    case ConditionMode::noncrypto: return "noncrypto";
    case ConditionMode::crypto: return "crypto";
  }
  return "?";
}

std::optional<ConditionMode> condition_mode_from_string(const std::string& s) {
  if (s == "direct") return ConditionMode::direct;
  if (s == "noncrypto") return ConditionMode::noncrypto;
  if (s == "crypto") return ConditionMode::crypto;
  return std::nullopt;
}

std::optional<Timestamp> condition_time_from(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                             std::size_t k, ConditionMode mode, Timestamp start,
                                             std::optional<Timestamp> deadline) {
  EnumerationOptions opts;
  opts.start = start;
  return condition_time_over(enumerate_path_sets(g, p, q, opts), g.horizon(), k, mode, deadline);
}

std::optional<Timestamp> condition_time_over(const PathSetEnumeration& e, Timestamp horizon,
                                             std::size_t k, ConditionMode mode,
                                             std::optional<Timestamp> deadline) {
  const Timestamp limit = deadline ? std::min(*deadline, horizon) : horizon;

  if (mode == ConditionMode::direct) {
    for (std::size_t i = 0; i < e.collection.sets.size(); ++i)
      if (e.collection.sets[i].empty())
        return e.completion[i] <= limit ? std::optional<Timestamp>(e.completion[i]) : std::nullopt;
    return std::nullopt;
  }

  const std::size_t threshold = mode == ConditionMode::noncrypto ? 2 * k : k;

  std::vector<Timestamp> candidates;
  for (Timestamp t : e.completion)
    if (t <= limit) candidates.push_back(t);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto satisfied_at = [&](Timestamp t) {
    std::vector<std::vector<NodeId>> sub;
    for (std::size_t i = 0; i < e.collection.sets.size(); ++i)
      if (e.completion[i] <= t) sub.push_back(e.collection.sets[i]);
    return min_cut_exceeds(PathSetCollection::normalized(std::move(sub)), threshold);
  };

  // The truncation only gains path sets as t grows, so satisfaction is
  // monotone and binary search over completion dates is exact.
  if (candidates.empty() || !satisfied_at(candidates.back())) return std::nullopt;
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (satisfied_at(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

std::optional<Timestamp> condition_time(const TimeVaryingGraph& g, NodeId p, NodeId q,
                                        std::size_t k, ConditionMode mode) {
  return condition_time_from(g, p, q, k, mode, Timestamp(0));
}

}  // namespace relcomm
