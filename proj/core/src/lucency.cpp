#include "lucent/lucency.hpp"

#include <algorithm>

namespace lucent {

namespace {

void require_complete(const ReachabilityGraph& rg) {
  if (!rg.complete())
    throw IncompleteStateSpace(rg.status() == ReachabilityGraph::Status::unbounded
                                   ? "state space is unbounded"
                                   : "state space exploration hit the node cap");
}

bool marks_some_input(const PetriNet& net, const Marking& m, const NodeId& transition) {
  for (const auto& p : net.preset(transition))
    if (m.marks(p)) return true;
  return false;
}

}  // namespace

LucencyVerdict check_lucency(const PetriNet& net, const ReachabilityGraph& rg) {
  (void)net;
  LucencyVerdict v;
  if (rg.status() == ReachabilityGraph::Status::unbounded) {
    v.lucent = false;
    v.reason = LucencyVerdict::Reason::unbounded;
    return v;
  }
  require_complete(rg);

  for (std::size_t i = 0; i < rg.nodes().size(); ++i)
    v.footprint_index[rg.enabled_at(i)].push_back(rg.nodes()[i]);
  for (auto& [_, markings] : v.footprint_index) std::sort(markings.begin(), markings.end());

  std::optional<std::pair<Marking, Marking>> best;
  for (const auto& [_, markings] : v.footprint_index) {
    if (markings.size() < 2) continue;
    std::pair<Marking, Marking> candidate{markings[0], markings[1]};
    if (!best || candidate < *best) best = candidate;
  }

  v.lucent = !best.has_value();
  v.reason = v.lucent ? LucencyVerdict::Reason::unique_footprints
                      : LucencyVerdict::Reason::footprint_collision;
  v.witness = best;
  return v;
}

TransparencyReport transparency(const PetriNet& net, const ReachabilityGraph& rg) {
  require_complete(rg);
  TransparencyReport r;
  r.fully_transparent = true;
  for (std::size_t i = 0; i < rg.nodes().size(); ++i) {
    const Marking& m = rg.nodes()[i];
    // The set of input places of enabled transitions, one token each.
    Marking visible;
    for (const auto& [t, _] : rg.successors(i))
      for (const auto& p : net.preset(t))
        if (!visible.marks(p)) visible.add(p);
    bool transparent = visible == m;
    r.per_marking.emplace_back(m, transparent);
    if (!transparent) r.fully_transparent = false;
  }
  return r;
}

std::vector<ConflictPair> find_conflict_pairs(const PetriNet& net, const ReachabilityGraph& rg) {
  require_complete(rg);

  const std::size_t n = rg.nodes().size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rg.nodes()[a] < rg.nodes()[b]; });

  std::vector<std::vector<NodeId>> en(n);
  for (std::size_t i = 0; i < n; ++i) en[i] = rg.enabled_at(i);

  std::vector<ConflictPair> out;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t i = order[a];
    if (en[i].empty()) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t j = order[b];
      if (en[j].empty()) continue;

      std::vector<NodeId> common;
      std::set_intersection(en[i].begin(), en[i].end(), en[j].begin(), en[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) continue;

      const Marking& m1 = rg.nodes()[i];
      const Marking& m2 = rg.nodes()[j];
      bool covered = std::all_of(en[i].begin(), en[i].end(),
                                 [&](const NodeId& t) { return marks_some_input(net, m2, t); }) &&
                     std::all_of(en[j].begin(), en[j].end(),
                                 [&](const NodeId& t) { return marks_some_input(net, m1, t); });
      if (!covered) continue;

      auto split = agreement_split(m1, m2);
      out.push_back({m1, m2, split.agree, split.disagree1, split.disagree2});
    }
  }
  return out;
}

AgreementSplit agreement_split(const Marking& m1, const Marking& m2) {
  AgreementSplit s;
  s.agree = Marking::pointwise_min(m1, m2);
  s.disagree1 = m1.minus(s.agree);
  s.disagree2 = m2.minus(s.agree);
  return s;
}

}  // namespace lucent
