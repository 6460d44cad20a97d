#include "lucent/semantics.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "graph_algos.hpp"

namespace lucent {

namespace {

void check_marking_over(const PetriNet& net, const Marking& m) {
  for (const auto& [place, _] : m.counts())
    if (!net.is_place(place)) throw NotInNet("marking mentions unknown place: " + place);
}

}  // namespace

std::vector<NodeId> enabled(const PetriNet& net, const Marking& m) {
  check_marking_over(net, m);
  // Candidates are the output transitions of marked places plus transitions
  // without inputs; anything else misses at least one token.
  std::set<NodeId> candidates(net.source_transitions().begin(), net.source_transitions().end());
  for (const auto& [place, _] : m.counts()) {
    const auto& post = net.postset(place);
    candidates.insert(post.begin(), post.end());
  }
  std::vector<NodeId> out;
  for (const auto& t : candidates) {
    const auto& pre = net.preset(t);
    if (std::all_of(pre.begin(), pre.end(), [&](const NodeId& p) { return m.marks(p); }))
      out.push_back(t);
  }
  return out;
}

bool is_enabled(const PetriNet& net, const Marking& m, const NodeId& transition) {
  if (!net.is_transition(transition)) throw NotInNet("unknown transition: " + transition);
  const auto& pre = net.preset(transition);
  return std::all_of(pre.begin(), pre.end(), [&](const NodeId& p) { return m.marks(p); });
}

Marking fire(const PetriNet& net, const Marking& m, const NodeId& transition) {
  if (!is_enabled(net, m, transition))
    throw NotEnabled(transition, 0, "transition not enabled: " + transition);
  Marking out = m;
  for (const auto& p : net.preset(transition)) out.remove(p);
  for (const auto& p : net.postset(transition)) out.add(p);
  return out;
}

Marking fire_sequence(const PetriNet& net, const Marking& m, const std::vector<NodeId>& steps) {
  Marking cur = m;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!net.is_transition(steps[i])) throw NotInNet("unknown transition: " + steps[i]);
    if (!is_enabled(net, cur, steps[i]))
      throw NotEnabled(steps[i], i + 1,
                       "step " + std::to_string(i + 1) + " (" + steps[i] + ") not enabled");
    cur = fire(net, cur, steps[i]);
  }
  return cur;
}

std::optional<std::size_t> ReachabilityGraph::index_of(const Marking& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> ReachabilityGraph::enabled_at(std::size_t node) const {
  std::vector<NodeId> out;
  out.reserve(succ_.at(node).size());
  for (const auto& [t, _] : succ_[node]) out.push_back(t);
  return out;
}

ReachabilityGraph explore(const PetriNet& net, const Marking& m0, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("exploration cap must be at least 1");
  check_marking_over(net, m0);

  ReachabilityGraph rg;
  rg.nodes_.push_back(m0);
  rg.index_[m0] = 0;
  rg.succ_.emplace_back();
  std::vector<std::size_t> parent{static_cast<std::size_t>(-1)};

  std::deque<std::size_t> frontier{0};
  bool stopped = false;

  while (!frontier.empty() && !stopped) {
    std::size_t n = frontier.front();
    frontier.pop_front();
    const Marking src = rg.nodes_[n];

    for (const auto& t : enabled(net, src)) {
      Marking next = fire(net, src, t);
      auto it = rg.index_.find(next);
      if (it == rg.index_.end()) {
        // Strict domination of a generation-path ancestor witnesses
        // unboundedness; the run from the ancestor can be pumped.
        for (std::size_t a = n; a != static_cast<std::size_t>(-1); a = parent[a]) {
          if (next.strictly_dominates(rg.nodes_[a])) {
            rg.status_ = ReachabilityGraph::Status::unbounded;
            rg.witness_ = std::make_pair(rg.nodes_[a], next);
            stopped = true;
            break;
          }
        }
        if (stopped) break;
        if (rg.nodes_.size() >= cap) {
          rg.status_ = ReachabilityGraph::Status::cap_exceeded;
          stopped = true;
          break;
        }
        std::size_t idx = rg.nodes_.size();
        rg.index_[next] = idx;
        rg.nodes_.push_back(std::move(next));
        rg.succ_.emplace_back();
        parent.push_back(n);
        frontier.push_back(idx);
        rg.edges_.push_back({n, t, idx});
        rg.succ_[n].emplace_back(t, idx);
      } else {
        rg.edges_.push_back({n, t, it->second});
        rg.succ_[n].emplace_back(t, it->second);
      }
    }
  }

  if (rg.status_ == ReachabilityGraph::Status::complete) {
    std::vector<std::vector<std::size_t>> adj(rg.nodes_.size());
    for (const auto& e : rg.edges_) adj[e.from].push_back(e.to);
    auto scc = detail::strongly_connected_components(adj);
    rg.comp_of_ = std::move(scc.component);
    rg.comp_count_ = scc.count;

    std::vector<std::set<std::size_t>> succ(rg.comp_count_);
    for (const auto& e : rg.edges_) {
      std::size_t a = rg.comp_of_[e.from], b = rg.comp_of_[e.to];
      if (a != b) succ[a].insert(b);
    }
    rg.comp_succ_.resize(rg.comp_count_);
    for (std::size_t c = 0; c < rg.comp_count_; ++c) {
      rg.comp_succ_[c].assign(succ[c].begin(), succ[c].end());
      if (succ[c].empty()) rg.terminal_.push_back(c);
    }
  }
  return rg;
}

BehaviorReport behavior(const PetriNet& net, const ReachabilityGraph& rg) {
  if (!rg.complete())
    throw IncompleteStateSpace(rg.status() == ReachabilityGraph::Status::unbounded
                                   ? "state space is unbounded"
                                   : "state space exploration hit the node cap");

  BehaviorReport r;
  r.bounded = true;

  long k = 0;
  for (const auto& m : rg.nodes()) k = std::max(k, m.max_count());
  r.bound_k = k;
  r.safe = k <= 1;

  std::set<NodeId> fired;
  for (const auto& e : rg.edges()) fired.insert(e.transition);
  for (const auto& t : net.transitions())
    if (!fired.count(t)) r.dead_transitions.insert(t);

  std::set<NodeId> marked;
  for (const auto& m : rg.nodes())
    for (const auto& [p, _] : m.counts()) marked.insert(p);
  for (const auto& p : net.places())
    if (!marked.count(p)) r.dead_places.insert(p);

  for (std::size_t i = 0; i < rg.nodes().size(); ++i)
    if (rg.successors(i).empty()) r.dead_markings.push_back(rg.nodes()[i]);
  std::sort(r.dead_markings.begin(), r.dead_markings.end());
  r.deadlock_free = r.dead_markings.empty();

  // A net is live iff every transition keeps firing inside every terminal SCC:
  // each node drains into some terminal SCC and cannot leave it again.
  std::vector<std::set<NodeId>> fires_in(rg.component_count());
  for (const auto& e : rg.edges()) fires_in[rg.component_of()[e.from]].insert(e.transition);
  r.live = true;
  for (std::size_t c : rg.terminal_components())
    if (fires_in[c].size() != net.transitions().size()) {
      r.live = false;
      break;
    }

  if (rg.terminal_components().size() == 1) {
    std::size_t home = rg.terminal_components().front();
    for (std::size_t i = 0; i < rg.nodes().size(); ++i)
      if (rg.component_of()[i] == home) r.home_markings.push_back(rg.nodes()[i]);
    std::sort(r.home_markings.begin(), r.home_markings.end());
  }
  return r;
}

}  // namespace lucent
