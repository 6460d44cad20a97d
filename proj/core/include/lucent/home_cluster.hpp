#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "lucent/semantics.hpp"

namespace lucent {

/// All nodes lying on a directed path that starts in an initially marked
/// place, the marked places included.
std::set<NodeId> conn_nodes(const PetriNet& net, const Marking& m0);

/// Restriction of the net to conn_nodes with the induced flow. Throws
/// CleanFailed when the restriction is not a valid net (no transitions left,
/// disconnected remainder, ...).
PetriNet clean_net(const PetriNet& net, const Marking& m0);

struct ShortCircuit {
  PetriNet net;
  NodeId fresh_transition;  // consumes the cluster's places, refills m0's places
};

/// Adds a fresh transition from the cluster's places back to the initially
/// marked places. The initial marking must be safe for the net, which is
/// verified by exploration; fresh-id collisions are resolved by suffixing.
ShortCircuit short_circuit(const PetriNet& net, const Cluster& cluster, const Marking& m0,
                           std::size_t cap = default_cap);

enum class HomeClusterMode { behavioral, structural, both };

/// Net-transformation counters for the structural detection route.
struct HomeClusterStats {
  std::size_t clean_calls = 0;
  std::size_t short_circuit_calls = 0;
  std::size_t decision_calls = 0;  // live/bounded decisions on short-circuited nets
};

struct ClusterVerdict {
  Cluster cluster;
  std::optional<bool> behavioral_home;  // cluster marking is a home marking
  bool in_conn = false;
  std::optional<bool> short_circuit_live_bounded;
};

struct HomeClusterReport {
  HomeClusterMode mode = HomeClusterMode::behavioral;
  std::vector<Cluster> home_clusters;    // ordered by smallest member
  std::vector<ClusterVerdict> per_cluster;
  HomeClusterStats stats;
};

/// behavioral: checks each cluster marking against the home markings of the
/// reachability graph. structural (proper free-choice nets with a safe
/// initial marking): per cluster inside conn, decides liveness+boundedness of
/// the short-circuited cleaned net. both: runs the two routes and requires
/// them to agree.
HomeClusterReport find_home_clusters(const PetriNet& net, const Marking& m0,
                                     HomeClusterMode mode = HomeClusterMode::behavioral,
                                     std::size_t cap = default_cap);

struct RelatingVerdict {
  Cluster cluster;
  bool home_cluster = false;                // (1) cluster marking is a home marking
  bool extended_home_cluster = false;       // (2) extended cluster is a home cluster of the
                                            //     short-circuited net
  bool live_bounded = false;                // (3) short-circuited net is live and bounded
  bool agree = false;                       // (1) == (2) == (3)
  bool sc_strongly_connected = false;       // short-circuited net checks
  bool sc_free_choice = false;
  bool extended_cluster_valid = false;      // cluster + fresh transition is a cluster there
};

struct RelatingReport {
  std::vector<RelatingVerdict> eligible;  // clusters inside conn
  std::vector<Cluster> skipped;           // clusters not inside conn
  bool all_agree = true;
};

/// Independently computes the three equivalent statements for every cluster
/// inside conn of a safely marked proper free-choice net, and verifies that
/// every short-circuited net is strongly connected and free-choice with the
/// extended cluster intact.
RelatingReport verify_relating_theorem(const PetriNet& net, const Marking& m0,
                                       std::size_t cap = default_cap);

}  // namespace lucent
