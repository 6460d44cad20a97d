#include "lucent/theorem_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "lucent/home_cluster.hpp"
#include "lucent/lucency.hpp"
#include "lucent/net_format.hpp"
#include "lucent/structural.hpp"

namespace lucent {

namespace {

void note(CheckResult& c, const std::string& msg) {
  c.failures++;
  if (c.notes.size() < 5) c.notes.push_back(msg);
}

void tick(const SuiteOptions& opt, const std::string& name, int done, int total) {
  if (!opt.progress) return;
  if (done % 50 == 0 || done == total)
    *opt.progress << "  " << name << ": " << done << "/" << total << "\n";
}

GenConfig config_for(const SuiteOptions& opt, int i) {
  GenConfig cfg;
  cfg.seed = opt.base_seed + static_cast<std::uint64_t>(i);
  cfg.place_budget = (i % 10 == 9) ? 12 : 3 + (i % 7);
  cfg.transition_budget = (i % 10 == 9) ? 12 : 4 + (i % 6);
  cfg.branching = 2 + (i % 3);
  cfg.strongly_connected = (i % 3 == 1);
  cfg.guarantee_home_cluster = true;
  return cfg;
}

std::string padded(const char* prefix, std::size_t n) {
  std::string digits = std::to_string(n);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return prefix + digits;
}

// Subsequence of steps restricted to one cluster.
std::map<std::size_t, std::vector<NodeId>> per_cluster_order(const PetriNet& net,
                                                             const std::vector<NodeId>& steps) {
  std::map<std::size_t, std::vector<NodeId>> out;
  for (const auto& t : steps) out[net.cluster_index(t)].push_back(t);
  return out;
}

}  // namespace

GeneratedNet make_cluster_family(std::size_t clusters) {
  if (clusters < 3) throw std::invalid_argument("the family needs at least 3 clusters");
  std::size_t chain = clusters - 2;

  std::vector<NodeId> places{"p_root", "pa_left", "pb_right"};
  std::vector<NodeId> transitions{"t_left", "t_right", "t_join"};
  std::vector<Arc> arcs{{"p_root", "t_left"},   {"p_root", "t_right"}, {"t_left", "pa_left"},
                        {"t_right", "pb_right"}, {"pa_left", "t_join"}, {"pb_right", "t_join"}};

  std::vector<NodeId> chain_places;
  for (std::size_t i = 1; i <= chain; ++i) {
    chain_places.push_back(padded("c", i));
    places.push_back(chain_places.back());
  }
  arcs.push_back({"t_join", chain_places[0]});
  for (std::size_t i = 0; i + 1 < chain_places.size(); ++i) {
    NodeId u = padded("u", i + 1);
    transitions.push_back(u);
    arcs.push_back({chain_places[i], u});
    arcs.push_back({u, chain_places[i + 1]});
  }

  return GeneratedNet{PetriNet::create(std::move(places), std::move(transitions), std::move(arcs)),
                      Marking{"p_root"}, std::nullopt};
}

SuiteResult run_theorem_suite(const SuiteOptions& opt) {
  SuiteResult result;
  CheckResult pipeline{"home-cluster-pipeline"};
  CheckResult path_safety{"rooted-path-safety"};
  CheckResult expedite{"expedite-permutations"};
  CheckResult relating{"relating-equivalence"};
  CheckResult sc_structure{"short-circuit-structure"};
  CheckResult state_bound{"lucency-state-bound"};
  CheckResult transparency_check{"transparency-implies-lucency"};
  CheckResult dichotomy{"cluster-dichotomy"};
  CheckResult sc_home{"strongly-connected-home-cluster"};
  CheckResult perpetual{"perpetual-subclass"};
  CheckResult complexity{"detection-complexity"};
  CheckResult round_trip{"document-round-trip"};

  long opaque_witnesses = 0;  // lucent but not fully transparent

  // --- generated home-cluster nets through the whole pipeline -------------
  for (int i = 0; i < opt.pipeline_nets; ++i) {
    GenConfig cfg = config_for(opt, i);
    GeneratedNet g = generate(cfg);
    ReachabilityGraph rg = explore(g.net, g.initial, opt.state_cap);
    if (!rg.complete()) {
      pipeline.skipped++;
      continue;
    }
    pipeline.cases++;
    std::string tag = "seed " + std::to_string(cfg.seed);

    auto b = behavior(g.net, rg);
    auto verdict = check_lucency(g.net, rg);
    if (!verdict.lucent) note(pipeline, tag + ": not lucent");
    if (!b.safe) note(pipeline, tag + ": not safe");
    if (!find_conflict_pairs(g.net, rg).empty()) note(pipeline, tag + ": conflict pair found");
    if (!check_no_domination(rg).ok()) note(pipeline, tag + ": dominating markings");

    if (verdict.lucent) {
      state_bound.cases++;
      std::size_t footprints = std::size_t{1}
                               << std::min<std::size_t>(g.net.transitions().size(), 40);
      if (rg.nodes().size() > footprints)
        note(state_bound, tag + ": more markings than enabled-set footprints");
    }

    auto tr = transparency(g.net, rg);
    transparency_check.cases++;
    if (tr.fully_transparent && !verdict.lucent)
      note(transparency_check, tag + ": fully transparent but not lucent");
    if (verdict.lucent && !tr.fully_transparent) opaque_witnesses++;

    auto hc = find_home_clusters(g.net, g.initial, HomeClusterMode::behavioral, opt.state_cap);
    if (g.home_cluster) {
      bool seeded_found = std::find(hc.home_clusters.begin(), hc.home_clusters.end(),
                                    *g.home_cluster) != hc.home_clusters.end();
      if (!seeded_found) note(pipeline, tag + ": seeded cluster not detected as home cluster");
    }

    // Cluster dichotomy: with a home cluster, a dead marking must be its
    // cluster marking (single transition-free place); deadlock freedom forces
    // cluster transitions.
    for (const auto& c : hc.home_clusters) {
      dichotomy.cases++;
      if (b.dead_markings.empty()) {
        if (c.transitions.empty()) note(dichotomy, tag + ": deadlock-free home cluster without transitions");
      } else {
        Marking mrk = cluster_marking(c);
        if (b.dead_markings.size() != 1 || b.dead_markings[0] != mrk ||
            c.places.size() != 1 || !c.transitions.empty())
          note(dichotomy, tag + ": dead marking disagrees with home cluster shape");
      }
    }

    auto sr = classify_structure(g.net);
    if (sr.strongly_connected && !hc.home_clusters.empty()) {
      sc_home.cases++;
      if (!b.live || !b.safe || !verdict.lucent)
        note(sc_home, tag + ": strongly connected home-cluster net not live+safe+lucent");
    }
    if (b.live && b.bounded && !hc.home_clusters.empty()) {
      perpetual.cases++;
      if (!sr.proper) note(perpetual, tag + ": live bounded home-cluster net not proper");
    }

    // Rooted-path safety samples: cycle (place, home cluster) pairs.
    if (!hc.home_clusters.empty()) {
      const auto& places = g.net.places();
      for (int s = 0; s < opt.path_samples; ++s) {
        const NodeId& p = places[s % places.size()];
        const Cluster& c = hc.home_clusters[s % hc.home_clusters.size()];
        path_safety.cases++;
        bool dead = b.dead_places.count(p) > 0;
        auto path = rooted_path_from_place(g.net, rg, p, c);
        if (dead) {
          if (path) note(path_safety, tag + ": dead place " + p + " produced a path");
          continue;
        }
        if (!path) {
          note(path_safety, tag + ": no rooted path from live place " + p);
          continue;
        }
        auto pc = path_predicates(g.net, *path, std::set<NodeId>(c.places));
        if (!pc.disentangled || !pc.q_rooted)
          note(path_safety, tag + ": path from " + p + " not rooted disentangled");
        if (path_max_tokens(g.net, rg, *path) > 1)
          note(path_safety, tag + ": path from " + p + " carries more than one token");
      }
    }
    tick(opt, "pipeline", i + 1, opt.pipeline_nets);
  }

  if (opaque_witnesses == 0 && opt.pipeline_nets > 0)
    note(transparency_check, "no lucent-but-not-fully-transparent net in the sample");
  else
    transparency_check.notes.push_back(std::to_string(opaque_witnesses) +
                                       " lucent nets were not fully transparent");

  // --- expedited permutations ---------------------------------------------
  for (int i = 0; i < opt.expedite_draws; ++i) {
    GenConfig cfg = config_for(opt, 10'000 + i);
    GeneratedNet g = generate(cfg);
    std::mt19937_64 rng(opt.base_seed ^ (0x9e3779b97f4a7c15ull + i));

    Marking cur = g.initial;
    std::vector<NodeId> steps;
    std::size_t len = 2 + rng() % 5;
    for (std::size_t s = 0; s < len; ++s) {
      auto en = enabled(g.net, cur);
      if (en.empty()) break;
      const NodeId& t = en[rng() % en.size()];
      steps.push_back(t);
      cur = fire(g.net, cur, t);
    }
    if (steps.empty()) {
      expedite.skipped++;
      continue;
    }
    expedite.cases++;
    std::string tag = "seed " + std::to_string(cfg.seed);

    FiringSequence seq = make_firing_sequence(g.net, g.initial, steps);
    Marking target = fire_sequence(g.net, g.initial, steps);
    std::vector<NodeId> sorted_steps = steps;
    std::sort(sorted_steps.begin(), sorted_steps.end());
    auto order = per_cluster_order(g.net, steps);

    auto closure = expedite_closure(g.net, seq, opt.expedite_budget);
    for (const auto& variant : closure.sequences) {
      try {
        if (fire_sequence(g.net, g.initial, variant) != target) {
          note(expedite, tag + ": permutation changes the final marking");
          break;
        }
      } catch (const NotEnabled&) {
        note(expedite, tag + ": permutation not enabled");
        break;
      }
      std::vector<NodeId> sorted_variant = variant;
      std::sort(sorted_variant.begin(), sorted_variant.end());
      if (sorted_variant != sorted_steps) {
        note(expedite, tag + ": permutation changes the step multiset");
        break;
      }
      if (per_cluster_order(g.net, variant) != order) {
        note(expedite, tag + ": permutation reorders a cluster");
        break;
      }
    }
    tick(opt, "expedite", i + 1, opt.expedite_draws);
  }

  // --- relating equivalence -------------------------------------------------
  for (int i = 0; i < opt.relating_nets; ++i) {
    GenConfig cfg = config_for(opt, 20'000 + i);
    if (i % 4 == 2) cfg.mutation = Mutation::remove_home_cluster;
    bool family = (i % 4 == 3);
    GeneratedNet g = family ? make_cluster_family(4 + static_cast<std::size_t>(i % 12))
                            : generate(cfg);
    std::string tag = family ? "family " + std::to_string(4 + i % 12)
                             : "seed " + std::to_string(cfg.seed);
    RelatingReport rep;
    try {
      rep = verify_relating_theorem(g.net, g.initial, opt.state_cap);
    } catch (const UnsafeInitialMarking&) {
      relating.skipped++;
      continue;
    } catch (const IncompleteStateSpace&) {
      relating.skipped++;
      continue;
    }
    for (const auto& v : rep.eligible) {
      relating.cases++;
      if (!v.agree)
        note(relating, tag + ": statements disagree on cluster with seed " +
                           v.cluster.smallest_member());
      sc_structure.cases++;
      if (!v.sc_strongly_connected || !v.sc_free_choice || !v.extended_cluster_valid)
        note(sc_structure, tag + ": short-circuited net lost structure at cluster " +
                               v.cluster.smallest_member());
    }
    tick(opt, "relating", i + 1, opt.relating_nets);
  }

  // --- structural detection cost on the constant-state-space family --------
  if (opt.timing_check) {
    const std::vector<std::size_t> sizes{10, 25, 50, 100, 200};
    std::vector<double> millis;
    for (std::size_t k : sizes) {
      GeneratedNet fam = make_cluster_family(k);
      double best = 1e100;
      for (int run = 0; run < 3; ++run) {
        auto start = std::chrono::steady_clock::now();
        auto rep = find_home_clusters(fam.net, fam.initial, HomeClusterMode::structural,
                                      opt.state_cap);
        auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());

        complexity.cases++;
        if (rep.stats.clean_calls != 1)
          note(complexity, "family " + std::to_string(k) + ": clean ran " +
                               std::to_string(rep.stats.clean_calls) + " times");
        if (rep.stats.short_circuit_calls != k || rep.stats.decision_calls != k)
          note(complexity, "family " + std::to_string(k) + ": expected one short-circuit and one "
                               "decision per cluster, saw " +
                               std::to_string(rep.stats.short_circuit_calls) + "/" +
                               std::to_string(rep.stats.decision_calls));
        if (!rep.home_clusters.empty())
          note(complexity, "family " + std::to_string(k) + ": unexpected home cluster");
      }
      millis.push_back(best);
    }
    complexity.cases++;
    double ratio = millis.back() / std::max(millis.front(), 1e-6);
    double quadratic = static_cast<double>(sizes.back() * sizes.back()) /
                       static_cast<double>(sizes.front() * sizes.front());
    std::ostringstream note_text;
    note_text << "t(" << sizes.back() << ")/t(" << sizes.front() << ") = " << ratio
              << ", quadratic bound " << quadratic;
    complexity.notes.push_back(note_text.str());
    if (ratio >= quadratic)
      note(complexity, "structural detection grew at least quadratically: " + note_text.str());
  }

  // --- document round-trip ---------------------------------------------------
  for (int i = 0; i < std::max(opt.pipeline_nets, 100); ++i) {
    GenConfig cfg = config_for(opt, 30'000 + i);
    cfg.guarantee_home_cluster = (i % 2 == 0);
    if (i % 5 == 4) cfg.mutation = Mutation::break_free_choice;
    GeneratedNet g = generate(cfg);
    round_trip.cases++;
    NetDocument doc = to_document(g.net, g.initial, "g" + std::to_string(cfg.seed));
    NetDocument reparsed = parse_document(serialize_document(doc));
    if (reparsed != doc) {
      note(round_trip, "seed " + std::to_string(cfg.seed) + ": document round-trip mismatch");
      continue;
    }
    auto [net2, m2] = instantiate(reparsed);
    if (!(net2 == g.net) || m2 != g.initial)
      note(round_trip, "seed " + std::to_string(cfg.seed) + ": reparsed net differs");
  }

  result.checks = {pipeline,     path_safety, expedite,  relating,  sc_structure,
                   state_bound,  transparency_check,     dichotomy, sc_home,
                   perpetual,    complexity,  round_trip};
  return result;
}

}  // namespace lucent
