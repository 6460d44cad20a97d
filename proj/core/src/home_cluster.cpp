#include "lucent/home_cluster.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lucent {

namespace {

void check_cluster_of(const PetriNet& net, const Cluster& cluster) {
  NodeId seed = cluster.smallest_member();
  if (seed.empty() || !net.has_node(seed)) throw NotInNet("cluster seed not in net: " + seed);
  if (net.cluster_of(seed) != cluster)
    throw NotInNet("node set is not a cluster of this net (seed " + seed + ")");
}

ShortCircuit short_circuit_unchecked(const PetriNet& net, const Cluster& cluster,
                                     const Marking& m0) {
  NodeId fresh = "t_C__" + *cluster.places.begin();
  while (net.has_node(fresh)) fresh += "_";

  std::vector<NodeId> transitions = net.transitions();
  transitions.push_back(fresh);
  std::vector<Arc> arcs = net.arcs();
  for (const auto& p : cluster.places) arcs.push_back({p, fresh});
  for (const auto& [p, _] : m0.counts()) arcs.push_back({fresh, p});

  return ShortCircuit{PetriNet::create(net.places(), std::move(transitions), std::move(arcs)),
                      fresh};
}

bool cluster_in(const Cluster& cluster, const std::set<NodeId>& nodes) {
  for (const auto& id : cluster.places)
    if (!nodes.count(id)) return false;
  for (const auto& id : cluster.transitions)
    if (!nodes.count(id)) return false;
  return true;
}

void require_proper_free_choice(const PetriNet& net, const char* what) {
  auto sr = classify_structure(net);
  if (!sr.proper) throw ValidationError(std::string(what) + " needs a proper net");
  if (!sr.free_choice) throw ValidationError(std::string(what) + " needs a free-choice net");
}

// Explores and insists on a complete, safe state space.
ReachabilityGraph explore_safe(const PetriNet& net, const Marking& m0, std::size_t cap) {
  ReachabilityGraph rg = explore(net, m0, cap);
  if (rg.status() == ReachabilityGraph::Status::unbounded)
    throw UnsafeInitialMarking("the initial marking is not safe (state space is unbounded)");
  if (!rg.complete())
    throw IncompleteStateSpace("state space exploration hit the node cap");
  for (const auto& m : rg.nodes())
    if (m.max_count() > 1)
      throw UnsafeInitialMarking("the initial marking is not safe: " + m.to_string() +
                                 " is reachable");
  return rg;
}

}  // namespace

std::set<NodeId> conn_nodes(const PetriNet& net, const Marking& m0) {
  std::set<NodeId> seen;
  std::deque<NodeId> frontier;
  for (const auto& [p, _] : m0.counts()) {
    if (!net.is_place(p)) throw NotInNet("marking mentions unknown place: " + p);
    if (seen.insert(p).second) frontier.push_back(p);
  }
  while (!frontier.empty()) {
    NodeId cur = frontier.front();
    frontier.pop_front();
    for (const auto& next : net.postset(cur))
      if (seen.insert(next).second) frontier.push_back(next);
  }
  return seen;
}

PetriNet clean_net(const PetriNet& net, const Marking& m0) {
  auto conn = conn_nodes(net, m0);
  std::vector<NodeId> places, transitions;
  for (const auto& p : net.places())
    if (conn.count(p)) places.push_back(p);
  for (const auto& t : net.transitions())
    if (conn.count(t)) transitions.push_back(t);
  std::vector<Arc> arcs;
  for (const auto& a : net.arcs())
    if (conn.count(a.source) && conn.count(a.target)) arcs.push_back(a);
  try {
    return PetriNet::create(std::move(places), std::move(transitions), std::move(arcs));
  } catch (const ValidationError& e) {
    throw CleanFailed(std::string("restriction to the connected part is not a valid net: ") +
                      e.what());
  }
}

ShortCircuit short_circuit(const PetriNet& net, const Cluster& cluster, const Marking& m0,
                           std::size_t cap) {
  check_cluster_of(net, cluster);
  if (cluster.places.empty()) throw NotInNet("cannot short-circuit a cluster without places");
  explore_safe(net, m0, cap);
  return short_circuit_unchecked(net, cluster, m0);
}

HomeClusterReport find_home_clusters(const PetriNet& net, const Marking& m0,
                                     HomeClusterMode mode, std::size_t cap) {
  HomeClusterReport report;
  report.mode = mode;

  auto conn = conn_nodes(net, m0);
  for (const auto& c : net.clusters()) {
    ClusterVerdict v{c};
    v.in_conn = cluster_in(c, conn);
    report.per_cluster.push_back(std::move(v));
  }

  if (mode != HomeClusterMode::structural) {
    ReachabilityGraph rg = explore(net, m0, cap);
    if (!rg.complete())
      throw IncompleteStateSpace(rg.status() == ReachabilityGraph::Status::unbounded
                                     ? "state space is unbounded"
                                     : "state space exploration hit the node cap");
    auto b = behavior(net, rg);
    std::set<Marking> home(b.home_markings.begin(), b.home_markings.end());
    for (auto& v : report.per_cluster)
      v.behavioral_home = home.count(cluster_marking(v.cluster)) > 0;
  }

  if (mode != HomeClusterMode::behavioral) {
    require_proper_free_choice(net, "structural home-cluster detection");
    explore_safe(net, m0, cap);

    PetriNet cleaned = clean_net(net, m0);
    report.stats.clean_calls++;

    for (auto& v : report.per_cluster) {
      if (!v.in_conn) continue;
      ShortCircuit sc = short_circuit_unchecked(cleaned, v.cluster, m0);
      report.stats.short_circuit_calls++;
      ReachabilityGraph rgc = explore(sc.net, m0, cap);
      report.stats.decision_calls++;
      if (rgc.status() == ReachabilityGraph::Status::cap_exceeded)
        throw IncompleteStateSpace("short-circuited net exceeded the node cap");
      v.short_circuit_live_bounded = rgc.complete() && behavior(sc.net, rgc).live;
    }
  }

  for (const auto& v : report.per_cluster) {
    bool is_home = mode == HomeClusterMode::structural
                       ? (v.in_conn && v.short_circuit_live_bounded.value_or(false))
                       : v.behavioral_home.value_or(false);
    if (is_home) report.home_clusters.push_back(v.cluster);
  }

  if (mode == HomeClusterMode::both) {
    for (const auto& v : report.per_cluster) {
      bool behavioral = v.behavioral_home.value_or(false);
      bool structural = v.in_conn && v.short_circuit_live_bounded.value_or(false);
      if (behavioral != structural)
        throw std::logic_error("behavioral and structural home-cluster detection disagree on "
                               "cluster with seed " +
                               v.cluster.smallest_member());
    }
  }
  return report;
}

RelatingReport verify_relating_theorem(const PetriNet& net, const Marking& m0, std::size_t cap) {
  require_proper_free_choice(net, "the relating check");
  ReachabilityGraph rg = explore_safe(net, m0, cap);
  auto b = behavior(net, rg);
  std::set<Marking> home(b.home_markings.begin(), b.home_markings.end());

  auto conn = conn_nodes(net, m0);
  PetriNet cleaned = clean_net(net, m0);

  RelatingReport report;
  for (const auto& c : net.clusters()) {
    if (!cluster_in(c, conn)) {
      report.skipped.push_back(c);
      continue;
    }
    RelatingVerdict v;
    v.cluster = c;
    v.home_cluster = home.count(cluster_marking(c)) > 0;

    ShortCircuit sc = short_circuit_unchecked(cleaned, c, m0);
    auto sr = classify_structure(sc.net);
    v.sc_strongly_connected = sr.strongly_connected;
    v.sc_free_choice = sr.free_choice;

    Cluster extended = c;
    extended.transitions.insert(sc.fresh_transition);
    v.extended_cluster_valid = sc.net.cluster_of(sc.fresh_transition) == extended;

    ReachabilityGraph rgc = explore(sc.net, m0, cap);
    if (rgc.status() == ReachabilityGraph::Status::cap_exceeded)
      throw IncompleteStateSpace("short-circuited net exceeded the node cap");
    if (rgc.complete()) {
      auto bc = behavior(sc.net, rgc);
      std::set<Marking> home_c(bc.home_markings.begin(), bc.home_markings.end());
      v.extended_home_cluster = home_c.count(cluster_marking(extended)) > 0;
      v.live_bounded = bc.live;
    } else {
      // Unbounded short-circuited net: certainly not live+bounded, and a home
      // cluster would force safeness, so both statements fail.
      v.extended_home_cluster = false;
      v.live_bounded = false;
    }

    v.agree = v.home_cluster == v.extended_home_cluster && v.home_cluster == v.live_bounded;
    if (!v.agree) report.all_agree = false;
    report.eligible.push_back(std::move(v));
  }
  return report;
}

}  // namespace lucent
