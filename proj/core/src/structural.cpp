#include "lucent/structural.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace lucent {

namespace {

void check_positions(const FiringSequence& seq, std::size_t i, std::size_t j) {
  if (i < 1 || j <= i || j > seq.steps.size())
    throw std::out_of_range("expedite positions must satisfy 1 <= i < j <= " +
                            std::to_string(seq.steps.size()));
}

// Markings before each step: prefix[k] is reached after firing the first k
// steps.
std::vector<Marking> prefix_markings(const PetriNet& net, const FiringSequence& seq) {
  std::vector<Marking> prefix;
  prefix.reserve(seq.steps.size() + 1);
  prefix.push_back(seq.origin);
  for (const auto& t : seq.steps) prefix.push_back(fire(net, prefix.back(), t));
  return prefix;
}

bool expedite_check_with_prefix(const PetriNet& net, const std::vector<NodeId>& steps,
                                const std::vector<Marking>& prefix, std::size_t i,
                                std::size_t j) {
  std::size_t cj = net.cluster_index(steps[j - 1]);
  for (std::size_t k = i; k < j; ++k)
    if (net.cluster_index(steps[k - 1]) == cj) return false;
  return is_enabled(net, prefix[i - 1], steps[j - 1]);
}

std::vector<NodeId> moved_steps(const std::vector<NodeId>& steps, std::size_t i, std::size_t j) {
  std::vector<NodeId> out;
  out.reserve(steps.size());
  out.insert(out.end(), steps.begin(), steps.begin() + (i - 1));
  out.push_back(steps[j - 1]);
  out.insert(out.end(), steps.begin() + (i - 1), steps.begin() + (j - 1));
  out.insert(out.end(), steps.begin() + j, steps.end());
  return out;
}

}  // namespace

FiringSequence make_firing_sequence(const PetriNet& net, Marking origin,
                                    std::vector<NodeId> steps) {
  fire_sequence(net, origin, steps);  // validates stepwise enabledness
  return FiringSequence{std::move(origin), std::move(steps)};
}

bool expedite_check(const PetriNet& net, const FiringSequence& seq, std::size_t i,
                    std::size_t j) {
  check_positions(seq, i, j);
  std::size_t cj = net.cluster_index(seq.steps[j - 1]);
  for (std::size_t k = i; k < j; ++k)
    if (net.cluster_index(seq.steps[k - 1]) == cj) return false;

  Marking m = seq.origin;
  for (std::size_t k = 1; k < i; ++k) m = fire(net, m, seq.steps[k - 1]);
  return is_enabled(net, m, seq.steps[j - 1]);
}

FiringSequence expedite_apply(const PetriNet& net, const FiringSequence& seq, std::size_t i,
                              std::size_t j) {
  check_positions(seq, i, j);
  if (!expedite_check(net, seq, i, j))
    throw ExpediteNotPermitted("cannot move step " + std::to_string(j) + " to position " +
                               std::to_string(i));
  return FiringSequence{seq.origin, moved_steps(seq.steps, i, j)};
}

ExpediteClosure expedite_closure(const PetriNet& net, const FiringSequence& seq,
                                 std::size_t budget) {
  ExpediteClosure out;
  if (budget == 0) {
    out.truncated = true;
    return out;
  }
  out.sequences.insert(seq.steps);
  std::deque<std::vector<NodeId>> frontier{seq.steps};

  while (!frontier.empty()) {
    std::vector<NodeId> steps = std::move(frontier.front());
    frontier.pop_front();
    FiringSequence cur{seq.origin, steps};
    auto prefix = prefix_markings(net, cur);

    for (std::size_t i = 1; i < steps.size(); ++i) {
      for (std::size_t j = i + 1; j <= steps.size(); ++j) {
        if (!expedite_check_with_prefix(net, steps, prefix, i, j)) continue;
        auto next = moved_steps(steps, i, j);
        if (out.sequences.count(next)) continue;
        if (out.sequences.size() >= budget) {
          out.truncated = true;
          return out;
        }
        out.sequences.insert(next);
        frontier.push_back(std::move(next));
      }
    }
  }
  return out;
}

NodePath disentangle(const PetriNet& net, const NodePath& path, const Cluster& target) {
  make_path(net, path.nodes);  // re-validate arcs
  const auto& v = path.nodes;
  if (!net.is_place(v.front()) || !net.is_place(v.back()))
    throw InvalidPath("disentangle needs a place-to-place path");
  if (!target.places.count(v.back()))
    throw InvalidPath("path must end at a place of the target cluster");

  // Place positions are the even indices; the transition fired after the
  // place at index k sits at k+1.
  std::vector<NodeId> out;
  std::size_t i = 0;
  while (true) {
    const NodeId& p = v[i];
    if (!net.is_place(p)) throw InvalidPath("expected a place at path position " +
                                            std::to_string(i + 1));
    if (target.places.count(p)) {
      out.push_back(p);
      break;
    }
    // Last later place sharing p's cluster, if any.
    std::size_t pc = net.cluster_index(p);
    std::size_t jump = v.size();
    for (std::size_t k = v.size() - 1; k > i; k -= 2) {
      if (net.cluster_index(v[k]) == pc) {
        jump = k;
        break;
      }
    }
    if (jump == v.size()) {
      out.push_back(p);
      out.push_back(v[i + 1]);
      i += 2;
    } else {
      // p shares the cluster of v[jump], so p also feeds the transition that
      // follows it (all transitions of a cluster consume from all its places
      // in a free-choice net).
      const NodeId& t = v[jump + 1];
      if (!net.has_arc(p, t))
        throw InvalidPath("shortcut arc " + p + " -> " + t +
                          " missing; the net is not free-choice");
      out.push_back(p);
      out.push_back(t);
      i = jump + 2;
    }
  }
  return make_path(net, std::move(out));
}

std::optional<NodePath> rooted_path_from_place(const PetriNet& net, const ReachabilityGraph& rg,
                                               const NodeId& place, const Cluster& target) {
  if (!net.is_place(place)) throw NotInNet("unknown place: " + place);
  for (const auto& id : target.places)
    if (!net.is_place(id)) throw NotInNet("cluster place not in net: " + id);
  for (const auto& id : target.transitions)
    if (!net.is_transition(id)) throw NotInNet("cluster transition not in net: " + id);

  bool dead = std::none_of(rg.nodes().begin(), rg.nodes().end(),
                           [&](const Marking& m) { return m.marks(place); });
  if (dead) return std::nullopt;

  if (target.places.count(place)) return NodePath{{place}};

  // Breadth-first search over the flow relation for any path into the target
  // cluster's places.
  std::map<NodeId, NodeId> parent;
  std::deque<NodeId> frontier{place};
  parent[place] = place;
  std::optional<NodeId> goal;
  while (!frontier.empty() && !goal) {
    NodeId cur = frontier.front();
    frontier.pop_front();
    for (const auto& next : net.postset(cur)) {
      if (parent.count(next)) continue;
      parent[next] = cur;
      if (net.is_place(next) && target.places.count(next)) {
        goal = next;
        break;
      }
      frontier.push_back(next);
    }
  }
  if (!goal) return std::nullopt;

  std::vector<NodeId> nodes;
  for (NodeId cur = *goal;; cur = parent[cur]) {
    nodes.push_back(cur);
    if (cur == place) break;
  }
  std::reverse(nodes.begin(), nodes.end());
  return disentangle(net, make_path(net, std::move(nodes)), target);
}

long path_max_tokens(const PetriNet& net, const ReachabilityGraph& rg, const NodePath& path) {
  if (!rg.complete())
    throw IncompleteStateSpace("path token counts need a complete reachability graph");
  auto places = path.place_set(net);
  long best = 0;
  for (const auto& m : rg.nodes()) best = std::max(best, m.total_over(places));
  return best;
}

DominationReport check_no_domination(const ReachabilityGraph& rg,
                                     const std::optional<Cluster>& cluster) {
  if (rg.status() == ReachabilityGraph::Status::cap_exceeded)
    throw IncompleteStateSpace("domination check needs a finished exploration");

  DominationReport report;
  if (cluster) {
    Marking mrk = cluster_marking(*cluster);
    for (const auto& m : rg.nodes())
      if (m.dominates(mrk) && m != mrk) report.above_cluster_marking.push_back(m);
    std::sort(report.above_cluster_marking.begin(), report.above_cluster_marking.end());
  } else {
    std::vector<Marking> sorted = rg.nodes();
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < sorted.size(); ++a)
      for (std::size_t b = 0; b < sorted.size(); ++b)
        if (a != b && sorted[a].strictly_dominates(sorted[b]))
          report.dominating_pairs.emplace_back(sorted[a], sorted[b]);
  }
  return report;
}

}  // namespace lucent
