#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lucent/net.hpp"

namespace lucent {

inline constexpr std::size_t default_cap = 1'000'000;

/// Transitions enabled in m, sorted by id.
std::vector<NodeId> enabled(const PetriNet& net, const Marking& m);

bool is_enabled(const PetriNet& net, const Marking& m, const NodeId& transition);

/// Fires an enabled transition: one token off each input place, one token onto
/// each output place.
Marking fire(const PetriNet& net, const Marking& m, const NodeId& transition);

/// Left fold of fire; the empty sequence returns m. A non-enabled step raises
/// NotEnabled carrying its 1-based position.
Marking fire_sequence(const PetriNet& net, const Marking& m, const std::vector<NodeId>& steps);

/// Breadth-first closure of the firing relation, deduplicated by canonical
/// marking equality. Exploration stops early when
///   - a fresh marking strictly dominates one of its generation-path
///     ancestors (Status::unbounded, witness recorded), or
///   - the node budget is exhausted (Status::cap_exceeded).
/// The SCC condensation is computed only for complete graphs.
class ReachabilityGraph {
public:
  enum class Status { complete, cap_exceeded, unbounded };

  struct Edge {
    std::size_t from;
    NodeId transition;
    std::size_t to;
    auto operator<=>(const Edge&) const = default;
  };

  Status status() const { return status_; }
  bool complete() const { return status_ == Status::complete; }

  const Marking& root() const { return nodes_.front(); }
  const std::vector<Marking>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(const Marking& m) const;

  /// Outgoing edges of a node as (transition, successor), sorted by transition.
  const std::vector<std::pair<NodeId, std::size_t>>& successors(std::size_t node) const {
    return succ_.at(node);
  }
  /// Transition labels of the outgoing edges, i.e. the enabled set of the node.
  std::vector<NodeId> enabled_at(std::size_t node) const;

  /// (ancestor, dominating successor) pair for Status::unbounded.
  const std::optional<std::pair<Marking, Marking>>& unbounded_witness() const { return witness_; }

  std::size_t component_count() const { return comp_count_; }
  const std::vector<std::size_t>& component_of() const { return comp_of_; }
  /// Condensation DAG: per component, the distinct successor components.
  const std::vector<std::vector<std::size_t>>& component_successors() const { return comp_succ_; }
  /// Components with no outgoing edges, sorted.
  const std::vector<std::size_t>& terminal_components() const { return terminal_; }

private:
  friend ReachabilityGraph explore(const PetriNet&, const Marking&, std::size_t);

  std::vector<Marking> nodes_;
  std::map<Marking, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> succ_;
  Status status_ = Status::complete;
  std::optional<std::pair<Marking, Marking>> witness_;
  std::size_t comp_count_ = 0;
  std::vector<std::size_t> comp_of_;
  std::vector<std::vector<std::size_t>> comp_succ_;
  std::vector<std::size_t> terminal_;
};

ReachabilityGraph explore(const PetriNet& net, const Marking& m0, std::size_t cap = default_cap);

struct BehaviorReport {
  bool bounded = false;
  std::optional<long> bound_k;  // largest per-place count over all markings
  bool safe = false;
  bool live = false;
  bool deadlock_free = false;
  std::set<NodeId> dead_places;
  std::set<NodeId> dead_transitions;
  std::vector<Marking> home_markings;  // sorted
  std::vector<Marking> dead_markings;  // sorted
};

/// Behavioral verdicts over a complete reachability graph.
///   - live: every terminal SCC fires every transition,
///   - home markings: the members of the unique terminal SCC (if any),
///   - dead markings: nodes without outgoing edges.
BehaviorReport behavior(const PetriNet& net, const ReachabilityGraph& rg);

}  // namespace lucent
