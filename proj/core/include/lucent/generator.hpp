#pragma once

#include <cstdint>
#include <optional>

#include "lucent/net.hpp"

namespace lucent {

enum class Mutation { none, break_free_choice, remove_home_cluster };

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t place_budget = 8;       // soft bound on fresh places
  std::size_t transition_budget = 8;  // soft bound on fresh transitions
  std::size_t branching = 3;          // widest choice / parallel split
  bool guarantee_home_cluster = true;
  bool strongly_connected = false;    // add a regeneration transition
  Mutation mutation = Mutation::none;
};

struct GeneratedNet {
  PetriNet net;
  Marking initial;
  /// The cluster the construction funnels into, verified behaviorally to be a
  /// home cluster; absent when the mutation removed it or no guarantee was
  /// requested.
  std::optional<Cluster> home_cluster;
};

/// Deterministic in the config. Emits a proper free-choice net built from
/// nested sequence / exclusive-choice / parallel / loop blocks between a
/// single entry place and a single exit place; the exit cluster acts as a
/// termination point, or as a regeneration point when strongly_connected.
/// With guarantee_home_cluster the exit cluster is verified behaviorally
/// (bounded resampling, GenerationFailed when exhausted). Mutations then
/// perturb the result to violate the named property:
///   - break_free_choice adds a never-enabled transition whose preset
///     overlaps an existing one without being equal;
///   - remove_home_cluster adds a side place collecting a token that cannot
///     reach the exit, so no cluster marking stays a home marking (the net is
///     kept terminating).
GeneratedNet generate(const GenConfig& config);

}  // namespace lucent
