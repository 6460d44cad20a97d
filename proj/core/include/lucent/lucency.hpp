#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lucent/semantics.hpp"

namespace lucent {

struct LucencyVerdict {
  enum class Reason { unique_footprints, footprint_collision, unbounded };

  bool lucent = false;
  Reason reason = Reason::unique_footprints;
  /// Lexicographically smallest pair of distinct markings sharing a footprint.
  std::optional<std::pair<Marking, Marking>> witness;
  /// Enabled-transition set -> markings carrying it (sorted).
  std::map<std::vector<NodeId>, std::vector<Marking>> footprint_index;
};

/// A marked net is lucent when the enabled-transition set identifies the
/// marking. Unbounded nets are never lucent; a graph aborted with the
/// unbounded verdict short-circuits to lucent = false.
LucencyVerdict check_lucency(const PetriNet& net, const ReachabilityGraph& rg);

struct TransparencyReport {
  /// Per reachable marking: does it equal the set of input places of its
  /// enabled transitions?
  std::vector<std::pair<Marking, bool>> per_marking;
  bool fully_transparent = false;
};

TransparencyReport transparency(const PetriNet& net, const ReachabilityGraph& rg);

/// Two reachable, non-dead markings with disjoint enabled sets where each
/// marking covers at least one input place of every transition the other
/// enables; split into the shared and private tokens.
struct ConflictPair {
  Marking m1, m2;
  Marking agree;      // pointwise minimum of m1 and m2
  Marking disagree1;  // m1 - agree
  Marking disagree2;  // m2 - agree

  auto operator<=>(const ConflictPair&) const = default;
};

/// All conflict-pairs over the reachable markings, ordered by (m1, m2) with
/// m1 < m2.
std::vector<ConflictPair> find_conflict_pairs(const PetriNet& net, const ReachabilityGraph& rg);

struct AgreementSplit {
  Marking agree, disagree1, disagree2;
};

/// agree = pointwise minimum, disagree_i = m_i - agree.
AgreementSplit agreement_split(const Marking& m1, const Marking& m2);

}  // namespace lucent
