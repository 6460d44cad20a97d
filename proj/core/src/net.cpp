#include "lucent/net.hpp"

#include <algorithm>
#include <numeric>

#include "graph_algos.hpp"

namespace lucent {

namespace {

// Union-find over dense indices.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

void check_unique_sorted(std::vector<NodeId>& ids, const char* what) {
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end()) throw ValidationError(std::string("duplicate ") + what + " id: " + *dup);
}

}  // namespace

NodeId Cluster::smallest_member() const {
  if (places.empty() && transitions.empty()) return {};
  if (places.empty()) return *transitions.begin();
  if (transitions.empty()) return *places.begin();
  return std::min(*places.begin(), *transitions.begin());
}

PetriNet PetriNet::create(std::vector<NodeId> places, std::vector<NodeId> transitions,
                          std::vector<Arc> arcs) {
  PetriNet net;
  if (places.empty()) throw ValidationError("a net needs at least one place");
  if (transitions.empty()) throw ValidationError("a net needs at least one transition");
  for (const auto& id : places)
    if (id.empty()) throw ValidationError("empty place id");
  for (const auto& id : transitions)
    if (id.empty()) throw ValidationError("empty transition id");

  check_unique_sorted(places, "place");
  check_unique_sorted(transitions, "transition");

  for (const auto& p : places) net.nodes_[p].place = true;
  for (const auto& t : transitions) {
    if (net.nodes_.count(t)) throw ValidationError("id used as both place and transition: " + t);
    net.nodes_[t].place = false;
  }

  std::sort(arcs.begin(), arcs.end());
  auto dup = std::adjacent_find(arcs.begin(), arcs.end());
  if (dup != arcs.end())
    throw ValidationError("duplicate arc: " + dup->source + " -> " + dup->target);

  for (const auto& a : arcs) {
    auto src = net.nodes_.find(a.source);
    auto dst = net.nodes_.find(a.target);
    if (src == net.nodes_.end()) throw ValidationError("arc endpoint not declared: " + a.source);
    if (dst == net.nodes_.end()) throw ValidationError("arc endpoint not declared: " + a.target);
    if (src->second.place == dst->second.place)
      throw ValidationError("arc must connect a place and a transition: " + a.source + " -> " +
                            a.target);
    src->second.post.push_back(a.target);
    dst->second.pre.push_back(a.source);
  }
  for (auto& [_, info] : net.nodes_) {
    std::sort(info.pre.begin(), info.pre.end());
    std::sort(info.post.begin(), info.post.end());
  }

  net.places_ = std::move(places);
  net.transitions_ = std::move(transitions);
  net.arcs_ = std::move(arcs);

  // Weak connectivity over the undirected graph.
  std::map<NodeId, std::size_t> index;
  std::size_t k = 0;
  for (const auto& [id, _] : net.nodes_) index[id] = k++;
  UnionFind weak(k);
  for (const auto& a : net.arcs_) weak.unite(index[a.source], index[a.target]);
  std::size_t root = weak.find(0);
  for (std::size_t i = 1; i < k; ++i)
    if (weak.find(i) != root) {
      auto it = net.nodes_.begin();
      std::advance(it, i);
      throw ValidationError("net is not weakly connected (e.g. node " + it->first +
                            " is isolated from " + net.nodes_.begin()->first + ")");
    }

  // Cluster partition: the closure rules identify exactly the components of
  // the place->transition arcs.
  UnionFind clu(k);
  for (const auto& a : net.arcs_)
    if (net.nodes_[a.source].place) clu.unite(index[a.source], index[a.target]);

  std::map<std::size_t, Cluster> by_root;
  for (const auto& [id, info] : net.nodes_) {
    Cluster& c = by_root[clu.find(index[id])];
    if (info.place)
      c.places.insert(id);
    else
      c.transitions.insert(id);
  }
  std::vector<Cluster> clusters;
  clusters.reserve(by_root.size());
  for (auto& [_, c] : by_root) clusters.push_back(std::move(c));
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    return a.smallest_member() < b.smallest_member();
  });
  net.clusters_ = std::move(clusters);
  for (std::size_t i = 0; i < net.clusters_.size(); ++i) {
    for (const auto& id : net.clusters_[i].places) net.nodes_[id].cluster = i;
    for (const auto& id : net.clusters_[i].transitions) net.nodes_[id].cluster = i;
  }

  for (const auto& t : net.transitions_)
    if (net.nodes_[t].pre.empty()) net.source_transitions_.push_back(t);

  return net;
}

bool PetriNet::is_place(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it != nodes_.end() && it->second.place;
}

bool PetriNet::is_transition(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it != nodes_.end() && !it->second.place;
}

const std::vector<NodeId>& PetriNet::preset(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotInNet("unknown node: " + id);
  return it->second.pre;
}

const std::vector<NodeId>& PetriNet::postset(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotInNet("unknown node: " + id);
  return it->second.post;
}

std::set<NodeId> PetriNet::preset_of(const std::set<NodeId>& nodes) const {
  std::set<NodeId> out;
  for (const auto& id : nodes) {
    const auto& pre = preset(id);
    out.insert(pre.begin(), pre.end());
  }
  return out;
}

std::set<NodeId> PetriNet::postset_of(const std::set<NodeId>& nodes) const {
  std::set<NodeId> out;
  for (const auto& id : nodes) {
    const auto& post = postset(id);
    out.insert(post.begin(), post.end());
  }
  return out;
}

bool PetriNet::has_arc(const NodeId& from, const NodeId& to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{from, to});
}

std::size_t PetriNet::cluster_index(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotInNet("unknown node: " + id);
  return it->second.cluster;
}

std::pair<std::set<NodeId>, std::set<NodeId>> preset_postset(const PetriNet& net,
                                                             const NodeId& id) {
  const auto& pre = net.preset(id);
  const auto& post = net.postset(id);
  return {std::set<NodeId>(pre.begin(), pre.end()), std::set<NodeId>(post.begin(), post.end())};
}

std::pair<std::set<NodeId>, std::set<NodeId>> preset_postset(const PetriNet& net,
                                                             const std::set<NodeId>& nodes) {
  return {net.preset_of(nodes), net.postset_of(nodes)};
}

std::vector<Cluster> compute_clusters(const PetriNet& net) { return net.clusters(); }

const Cluster& cluster_of(const PetriNet& net, const NodeId& id) { return net.cluster_of(id); }

Marking cluster_marking(const Cluster& c) {
  Marking m;
  for (const auto& p : c.places) m.add(p);
  return m;
}

StructureReport classify_structure(const PetriNet& net) {
  StructureReport r;

  // Free-choice holds exactly when every transition consumes from all places
  // of its cluster.
  r.free_choice = true;
  for (const auto& t : net.transitions()) {
    const auto& pre = net.preset(t);
    const auto& cluster_places = net.cluster_of(t).places;
    if (pre.size() != cluster_places.size() ||
        !std::equal(pre.begin(), pre.end(), cluster_places.begin())) {
      r.free_choice = false;
      break;
    }
  }

  r.proper = true;
  r.p_net = true;
  for (const auto& t : net.transitions()) {
    const auto& pre = net.preset(t);
    const auto& post = net.postset(t);
    if (pre.empty() || post.empty()) r.proper = false;
    if (pre.size() > 1 || post.size() > 1) r.p_net = false;
  }

  r.t_net = true;
  for (const auto& p : net.places())
    if (net.preset(p).size() > 1 || net.postset(p).size() > 1) {
      r.t_net = false;
      break;
    }

  // Strong connectivity of the whole node graph.
  std::map<NodeId, std::size_t> index;
  std::size_t k = 0;
  for (const auto& p : net.places()) index[p] = k++;
  for (const auto& t : net.transitions()) index[t] = k++;
  std::vector<std::vector<std::size_t>> adj(k);
  for (const auto& a : net.arcs()) adj[index[a.source]].push_back(index[a.target]);
  r.strongly_connected = detail::strongly_connected_components(adj).count == 1;

  return r;
}

std::set<NodeId> NodePath::place_set(const PetriNet& net) const {
  std::set<NodeId> out;
  for (const auto& id : nodes)
    if (net.is_place(id)) out.insert(id);
  return out;
}

std::string NodePath::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ",";
    s += nodes[i];
  }
  return s + ">";
}

NodePath make_path(const PetriNet& net, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw InvalidPath("a path must be non-empty");
  for (const auto& id : nodes)
    if (!net.has_node(id)) throw InvalidPath("path node not in net: " + id);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!net.has_arc(nodes[i], nodes[i + 1]))
      throw InvalidPath("no arc " + nodes[i] + " -> " + nodes[i + 1]);
  return NodePath{std::move(nodes)};
}

PathClass path_predicates(const PetriNet& net, const NodePath& path,
                          const std::optional<std::set<NodeId>>& q) {
  PathClass pc;
  const auto& v = path.nodes;
  if (v.empty()) throw InvalidPath("a path must be non-empty");

  std::set<NodeId> seen(v.begin(), v.end());
  pc.elementary = seen.size() == v.size();
  pc.circuit = pc.elementary && net.has_arc(v.back(), v.front());

  pc.disentangled = net.is_place(v.front()) && net.is_place(v.back());
  if (pc.disentangled) {
    std::set<std::size_t> place_clusters;
    for (const auto& id : v) {
      if (!net.is_place(id)) continue;
      if (!place_clusters.insert(net.cluster_index(id)).second) {
        pc.disentangled = false;
        break;
      }
    }
  }

  pc.q_rooted = pc.disentangled && q.has_value() && q->count(v.back()) > 0;
  return pc;
}

}  // namespace lucent
