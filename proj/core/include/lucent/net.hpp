#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lucent/errors.hpp"
#include "lucent/marking.hpp"

namespace lucent {

/// Directed arc of the flow relation; one endpoint is a place, the other a
/// transition.
struct Arc {
  NodeId source;
  NodeId target;
  auto operator<=>(const Arc&) const = default;
};

/// Maximal node group closed under "a place brings its output transitions,
/// a transition brings its input places". Clusters partition the net.
struct Cluster {
  std::set<NodeId> places;
  std::set<NodeId> transitions;

  bool contains(const NodeId& id) const {
    return places.count(id) > 0 || transitions.count(id) > 0;
  }
  std::size_t size() const { return places.size() + transitions.size(); }
  /// Lexicographically smallest member; used for deterministic ordering.
  NodeId smallest_member() const;

  auto operator<=>(const Cluster&) const = default;
};

/// Immutable place/transition net. Construction validates:
///   - places and transitions are disjoint, non-empty, duplicate-free,
///   - every arc connects a place and a transition that exist,
///   - the flow relation has no duplicate arcs,
///   - the underlying undirected graph is weakly connected.
/// The cluster partition is computed once at construction.
class PetriNet {
public:
  static PetriNet create(std::vector<NodeId> places, std::vector<NodeId> transitions,
                         std::vector<Arc> arcs);

  const std::vector<NodeId>& places() const { return places_; }
  const std::vector<NodeId>& transitions() const { return transitions_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool has_node(const NodeId& id) const { return nodes_.count(id) > 0; }
  bool is_place(const NodeId& id) const;
  bool is_transition(const NodeId& id) const;

  /// Input nodes of a node (sorted). Throws NotInNet for unknown ids.
  const std::vector<NodeId>& preset(const NodeId& id) const;
  /// Output nodes of a node (sorted).
  const std::vector<NodeId>& postset(const NodeId& id) const;

  std::set<NodeId> preset_of(const std::set<NodeId>& nodes) const;
  std::set<NodeId> postset_of(const std::set<NodeId>& nodes) const;

  bool has_arc(const NodeId& from, const NodeId& to) const;

  /// The cluster partition, ordered by smallest member id.
  const std::vector<Cluster>& clusters() const { return clusters_; }
  /// Index into clusters() for the cluster containing the node.
  std::size_t cluster_index(const NodeId& id) const;
  const Cluster& cluster_of(const NodeId& id) const { return clusters_[cluster_index(id)]; }

  /// Transitions with an empty preset; enabled in every marking.
  const std::vector<NodeId>& source_transitions() const { return source_transitions_; }

  bool operator==(const PetriNet& other) const {
    return places_ == other.places_ && transitions_ == other.transitions_ && arcs_ == other.arcs_;
  }

private:
  PetriNet() = default;

  struct NodeInfo {
    bool place = false;
    std::vector<NodeId> pre, post;
    std::size_t cluster = 0;
  };

  std::vector<NodeId> places_, transitions_;
  std::vector<Arc> arcs_;  // sorted, unique
  std::map<NodeId, NodeInfo> nodes_;
  std::vector<Cluster> clusters_;
  std::vector<NodeId> source_transitions_;
};

/// (input nodes, output nodes) of a single node.
std::pair<std::set<NodeId>, std::set<NodeId>> preset_postset(const PetriNet& net, const NodeId& id);
/// Generalization to node sets (union of the per-node sets).
std::pair<std::set<NodeId>, std::set<NodeId>> preset_postset(const PetriNet& net,
                                                             const std::set<NodeId>& nodes);

/// Cluster partition, ordered by smallest member id.
std::vector<Cluster> compute_clusters(const PetriNet& net);

/// Closure of a single node under the cluster rules.
const Cluster& cluster_of(const PetriNet& net, const NodeId& id);

/// Smallest marking that fully enables the cluster: one token per place.
Marking cluster_marking(const Cluster& c);

struct StructureReport {
  bool free_choice = false;        // all transitions of a cluster share the full place set
  bool proper = false;             // every transition has input and output places
  bool strongly_connected = false;
  bool p_net = false;              // state machine: transitions have <=1 input, <=1 output place
  bool t_net = false;              // marked graph: places have <=1 input, <=1 output transition
};

StructureReport classify_structure(const PetriNet& net);

/// Non-empty node sequence whose consecutive elements are connected by arcs.
struct NodePath {
  std::vector<NodeId> nodes;

  const NodeId& first() const { return nodes.front(); }
  const NodeId& last() const { return nodes.back(); }
  std::size_t length() const { return nodes.size(); }
  /// The distinct places on the path.
  std::set<NodeId> place_set(const PetriNet& net) const;
  std::string to_string() const;

  auto operator<=>(const NodePath&) const = default;
};

/// Validates the sequence against the net's flow relation. Throws InvalidPath.
NodePath make_path(const PetriNet& net, std::vector<NodeId> nodes);

struct PathClass {
  bool elementary = false;    // no node occurs twice
  bool circuit = false;       // elementary and the last node feeds the first
  bool disentangled = false;  // place-to-place, no two places share a cluster
  bool q_rooted = false;      // disentangled and the last node lies in q
};

PathClass path_predicates(const PetriNet& net, const NodePath& path,
                          const std::optional<std::set<NodeId>>& q = std::nullopt);

}  // namespace lucent
