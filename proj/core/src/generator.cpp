#include "lucent/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lucent/home_cluster.hpp"
#include "lucent/semantics.hpp"

namespace lucent {

namespace {

constexpr std::size_t verify_cap = 200'000;
constexpr int retry_budget = 50;

std::string padded(const char* prefix, std::size_t n) {
  std::string digits = std::to_string(n);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return prefix + digits;
}

struct Builder {
  std::mt19937_64 rng;
  const GenConfig& cfg;
  std::vector<NodeId> places, transitions;
  std::vector<Arc> arcs;

  explicit Builder(const GenConfig& c, std::uint64_t round) : rng(c.seed * 1000003 + round), cfg(c) {}

  // Bounded draw from the raw engine; bias is irrelevant here and avoiding
  // std::uniform_int_distribution keeps streams identical across toolchains.
  std::size_t below(std::size_t n) { return n == 0 ? 0 : rng() % n; }
  bool coin(std::size_t percent) { return below(100) < percent; }

  NodeId place() {
    places.push_back(padded("p", places.size() + 1));
    return places.back();
  }
  NodeId transition() {
    transitions.push_back(padded("t", transitions.size() + 1));
    return transitions.back();
  }
  void arc(const NodeId& a, const NodeId& b) { arcs.push_back({a, b}); }

  bool places_left(std::size_t need) const { return places.size() + need <= cfg.place_budget + 2; }
  bool trans_left(std::size_t need) const {
    return transitions.size() + need <= cfg.transition_budget + 1;
  }

  void atomic(const NodeId& in, const NodeId& out) {
    NodeId t = transition();
    arc(in, t);
    arc(t, out);
  }

  void block(const NodeId& in, const NodeId& out, int depth) {
    enum Kind { kAtomic, kSequence, kChoice, kParallel, kLoop };
    std::vector<Kind> options{kAtomic};
    if (depth < 6) {
      if (places_left(1) && trans_left(2)) options.push_back(kSequence);
      if (trans_left(2)) options.push_back(kChoice);
      if (cfg.branching >= 2 && places_left(2) && trans_left(2)) options.push_back(kParallel);
      if (places_left(2) && trans_left(3)) options.push_back(kLoop);
    }
    switch (options[below(options.size())]) {
      case kAtomic:
        atomic(in, out);
        break;
      case kSequence: {
        NodeId mid = place();
        block(in, mid, depth + 1);
        block(mid, out, depth + 1);
        break;
      }
      case kChoice: {
        std::size_t width = 2 + below(cfg.branching > 2 ? cfg.branching - 1 : 1);
        for (std::size_t i = 0; i < width; ++i) {
          NodeId t = transition();
          arc(in, t);
          if (places_left(1) && trans_left(1) && coin(40)) {
            NodeId mid = place();
            arc(t, mid);
            block(mid, out, depth + 1);
          } else {
            arc(t, out);
          }
        }
        break;
      }
      case kParallel: {
        std::size_t width = 2 + below(std::min<std::size_t>(cfg.branching, 4) - 1);
        NodeId split = transition();
        NodeId join = transition();
        arc(in, split);
        arc(join, out);
        for (std::size_t i = 0; i < width; ++i) {
          if (i > 0 && places_left(2) && trans_left(1) && coin(55)) {
            NodeId a = place(), b = place();
            arc(split, a);
            block(a, b, depth + 1);
            arc(b, join);
          } else {
            // Pass-through branch: the token waits here while the siblings
            // run, which is what makes some lucent nets not fully transparent.
            NodeId x = place();
            arc(split, x);
            arc(x, join);
          }
        }
        break;
      }
      case kLoop: {
        NodeId body_in = place(), body_out = place();
        NodeId enter = transition();
        arc(in, enter);
        arc(enter, body_in);
        block(body_in, body_out, depth + 1);
        NodeId back = transition();
        arc(body_out, back);
        arc(back, body_in);
        NodeId leave = transition();
        arc(body_out, leave);
        arc(leave, out);
        break;
      }
    }
  }
};

struct Draft {
  PetriNet net;
  Marking initial;
  NodeId entry, exit;
  std::optional<NodeId> regeneration;
};

Draft build_draft(Builder& b) {
  NodeId entry = b.place();
  NodeId exit = b.place();
  b.block(entry, exit, 0);
  std::optional<NodeId> regeneration;
  // A terminating net stays terminating under remove_home_cluster; adding the
  // regeneration edge there would make the side place unbounded.
  if (b.cfg.strongly_connected && b.cfg.mutation != Mutation::remove_home_cluster) {
    NodeId t = b.transition();
    b.arc(exit, t);
    b.arc(t, entry);
    regeneration = t;
  }
  return Draft{PetriNet::create(b.places, b.transitions, b.arcs), Marking{entry}, entry, exit,
               regeneration};
}

Cluster seeded_cluster(const Draft& d) {
  Cluster c;
  c.places.insert(d.exit);
  if (d.regeneration) c.transitions.insert(*d.regeneration);
  return c;
}

bool verify_home_cluster(const Draft& d) {
  ReachabilityGraph rg = explore(d.net, d.initial, verify_cap);
  if (!rg.complete()) return false;
  auto b = behavior(d.net, rg);
  if (!b.safe) return false;
  Marking mrk = cluster_marking(seeded_cluster(d));
  return std::binary_search(b.home_markings.begin(), b.home_markings.end(), mrk);
}

// A transition that never fires keeps behavior intact while its overlapping,
// unequal preset kills the free-choice property.
PetriNet apply_break_free_choice(Builder& b, const Draft& d) {
  NodeId starved = b.place();
  NodeId t = b.transition();
  b.arc(starved, t);
  b.arc(d.entry, t);
  b.arc(t, d.entry);
  return PetriNet::create(b.places, b.transitions, b.arcs);
}

// A side place fed by some firing transition collects tokens that can never
// reach the exit, so no cluster marking remains reachable from everywhere.
std::optional<PetriNet> apply_remove_home_cluster(Builder& b, const Draft& d) {
  ReachabilityGraph rg = explore(d.net, d.initial, verify_cap);
  if (!rg.complete()) return std::nullopt;
  std::set<NodeId> fired;
  for (const auto& e : rg.edges()) fired.insert(e.transition);
  if (fired.empty()) return std::nullopt;
  NodeId side = b.place();
  b.arc(*fired.begin(), side);
  PetriNet mutated = PetriNet::create(b.places, b.transitions, b.arcs);

  ReachabilityGraph rgm = explore(mutated, d.initial, verify_cap);
  if (!rgm.complete()) return std::nullopt;
  auto bm = behavior(mutated, rgm);
  std::set<Marking> home(bm.home_markings.begin(), bm.home_markings.end());
  for (const auto& c : mutated.clusters())
    if (home.count(cluster_marking(c))) return std::nullopt;
  return mutated;
}

}  // namespace

GeneratedNet generate(const GenConfig& cfg) {
  if (cfg.place_budget < 1 || cfg.transition_budget < 1)
    throw std::invalid_argument("generator budgets must be at least 1");
  if (cfg.branching < 1) throw std::invalid_argument("branching must be at least 1");

  for (int round = 0; round < retry_budget; ++round) {
    Builder b(cfg, static_cast<std::uint64_t>(round));
    Draft d = build_draft(b);

    if (cfg.guarantee_home_cluster && !verify_home_cluster(d)) continue;

    switch (cfg.mutation) {
      case Mutation::none: {
        std::optional<Cluster> c;
        if (cfg.guarantee_home_cluster) c = seeded_cluster(d);
        return GeneratedNet{d.net, d.initial, c};
      }
      case Mutation::break_free_choice: {
        PetriNet mutated = apply_break_free_choice(b, d);
        if (classify_structure(mutated).free_choice) continue;
        std::optional<Cluster> c;
        if (cfg.guarantee_home_cluster) c = seeded_cluster(d);
        return GeneratedNet{std::move(mutated), d.initial, c};
      }
      case Mutation::remove_home_cluster: {
        auto mutated = apply_remove_home_cluster(b, d);
        if (!mutated) continue;
        return GeneratedNet{std::move(*mutated), d.initial, std::nullopt};
      }
    }
  }
  throw GenerationFailed("no acceptable net after " + std::to_string(retry_budget) + " draws");
}

}  // namespace lucent
