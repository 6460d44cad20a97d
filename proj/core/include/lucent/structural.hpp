#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "lucent/semantics.hpp"

namespace lucent {

/// A transition sequence together with the marking it starts from; validated
/// to be stepwise enabled on construction.
struct FiringSequence {
  Marking origin;
  std::vector<NodeId> steps;

  auto operator<=>(const FiringSequence&) const = default;
};

FiringSequence make_firing_sequence(const PetriNet& net, Marking origin,
                                    std::vector<NodeId> steps);

/// May the j-th step be moved to position i (1-based, i < j)? True when the
/// prefix before i followed by the j-th transition is enabled and no step in
/// between belongs to the j-th transition's cluster.
bool expedite_check(const PetriNet& net, const FiringSequence& seq, std::size_t i, std::size_t j);

/// The sequence with step j moved to position i. Throws ExpediteNotPermitted
/// when expedite_check fails.
FiringSequence expedite_apply(const PetriNet& net, const FiringSequence& seq, std::size_t i,
                              std::size_t j);

inline constexpr std::size_t default_expedite_budget = 10'000;

struct ExpediteClosure {
  std::set<std::vector<NodeId>> sequences;
  bool truncated = false;
};

/// Fixed-point closure of expedite_apply over all permitted position pairs,
/// truncated (and flagged) at the budget.
ExpediteClosure expedite_closure(const PetriNet& net, const FiringSequence& seq,
                                 std::size_t budget = default_expedite_budget);

/// Shortcut procedure turning a place-to-place path that ends in the target
/// cluster into a target-rooted disentangled path with the same first place:
/// whenever the current place's cluster recurs later on the path, jump to the
/// last such occurrence and splice the current place directly onto the
/// transition that follows it. Requires a free-choice net.
NodePath disentangle(const PetriNet& net, const NodePath& path, const Cluster& target);

/// A target-rooted disentangled path from the given place, if one exists:
/// breadth-first search for any connecting path, then disentangle. Returns
/// nullopt for places that are never marked (dead) or unconnected.
std::optional<NodePath> rooted_path_from_place(const PetriNet& net, const ReachabilityGraph& rg,
                                               const NodeId& place, const Cluster& target);

/// Largest total token count over the path's places across all reachable
/// markings.
long path_max_tokens(const PetriNet& net, const ReachabilityGraph& rg, const NodePath& path);

struct DominationReport {
  /// Markings strictly above the cluster marking (cluster form).
  std::vector<Marking> above_cluster_marking;
  /// Ordered pairs (larger, smaller) of strictly dominating markings
  /// (pairwise form).
  std::vector<std::pair<Marking, Marking>> dominating_pairs;

  bool ok() const { return above_cluster_marking.empty() && dominating_pairs.empty(); }
};

/// With a cluster: reports reachable markings strictly dominating its cluster
/// marking. Without: reports all strictly dominating ordered pairs. Accepts
/// complete graphs and unbounded-aborted prefixes (the witness shows up in the
/// prefix); rejects cap-truncated graphs.
DominationReport check_no_domination(const ReachabilityGraph& rg,
                                     const std::optional<Cluster>& cluster = std::nullopt);

}  // namespace lucent
