#include "lucent/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lucent/dot_export.hpp"
#include "lucent/home_cluster.hpp"
#include "lucent/lucency.hpp"
#include "lucent/net_format.hpp"
#include "lucent/structural.hpp"
#include "lucent/theorem_suite.hpp"

namespace lucent::cli {

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_input = 2;
constexpr int exit_state_space = 3;

struct Global {
  std::size_t cap = default_cap;
  bool json_output = false;
  bool quiet = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Input {
  NetDocument doc;
  PetriNet net;
  Marking m0;
};

Input load_net(const std::string& path) {
  NetDocument doc = parse_document(read_input(path));
  auto [net, m0] = instantiate(doc);
  return Input{std::move(doc), std::move(net), std::move(m0)};
}

ReachabilityGraph explore_or_exceed(const PetriNet& net, const Marking& m0, std::size_t cap) {
  ReachabilityGraph rg = explore(net, m0, cap);
  if (rg.status() == ReachabilityGraph::Status::cap_exceeded)
    throw StateSpaceExceeded("state space exceeds the cap of " + std::to_string(cap) +
                             " markings (raise --cap)");
  return rg;
}

json marking_json(const Marking& m) {
  json j = json::object();
  for (const auto& [p, k] : m.counts()) j[p] = k;
  return j;
}

json cluster_json(const Cluster& c) {
  return json{{"places", c.places}, {"transitions", c.transitions}};
}

std::string cluster_text(const Cluster& c) {
  std::string s = "{";
  bool first = true;
  for (const auto& id : c.places) {
    if (!first) s += ",";
    first = false;
    s += id;
  }
  for (const auto& id : c.transitions) {
    if (!first) s += ",";
    first = false;
    s += id;
  }
  return s + "}";
}

json report_shell(const std::string& command, const Input& in, const Global& g) {
  return json{{"tool", "lucent"},
              {"version", version},
              {"command", command},
              {"cap", g.cap},
              {"net",
               {{"name", in.doc.name},
                {"places", in.net.places().size()},
                {"transitions", in.net.transitions().size()},
                {"arcs", in.net.arcs().size()}}}};
}

json exploration_json(const ReachabilityGraph& rg) {
  const char* status = rg.complete() ? "complete"
                       : rg.status() == ReachabilityGraph::Status::unbounded ? "unbounded"
                                                                             : "cap-exceeded";
  json j{{"status", status},
         {"complete", rg.complete()},
         {"nodes", rg.nodes().size()},
         {"edges", rg.edges().size()}};
  if (rg.unbounded_witness()) {
    j["unbounded_witness"] =
        json::array({marking_json(rg.unbounded_witness()->first),
                     marking_json(rg.unbounded_witness()->second)});
  }
  return j;
}

json structure_json(const StructureReport& s) {
  return json{{"free_choice", s.free_choice},
              {"proper", s.proper},
              {"strongly_connected", s.strongly_connected},
              {"p_net", s.p_net},
              {"t_net", s.t_net}};
}

json behavior_json(const BehaviorReport& b) {
  json home = json::array(), dead = json::array();
  for (const auto& m : b.home_markings) home.push_back(marking_json(m));
  for (const auto& m : b.dead_markings) dead.push_back(marking_json(m));
  return json{{"bounded", b.bounded},
              {"bound_k", b.bound_k ? json(*b.bound_k) : json(nullptr)},
              {"safe", b.safe},
              {"live", b.live},
              {"deadlock_free", b.deadlock_free},
              {"dead_places", b.dead_places},
              {"dead_transitions", b.dead_transitions},
              {"home_markings", home},
              {"dead_markings", dead}};
}

json lucency_json(const LucencyVerdict& v) {
  const char* reason = v.reason == LucencyVerdict::Reason::unique_footprints
                           ? "unique-footprints"
                       : v.reason == LucencyVerdict::Reason::footprint_collision
                           ? "footprint-collision"
                           : "unbounded";
  json j{{"lucent", v.lucent}, {"reason", reason}};
  if (v.witness)
    j["witness"] =
        json::array({marking_json(v.witness->first), marking_json(v.witness->second)});
  return j;
}

void print_structure(std::ostream& out, const StructureReport& s) {
  out << "structure: free-choice=" << (s.free_choice ? "yes" : "no")
      << " proper=" << (s.proper ? "yes" : "no")
      << " strongly-connected=" << (s.strongly_connected ? "yes" : "no")
      << " p-net=" << (s.p_net ? "yes" : "no") << " t-net=" << (s.t_net ? "yes" : "no") << "\n";
}

void print_behavior(std::ostream& out, const BehaviorReport& b) {
  out << "behavior: bounded=yes (k=" << *b.bound_k << ") safe=" << (b.safe ? "yes" : "no")
      << " live=" << (b.live ? "yes" : "no")
      << " deadlock-free=" << (b.deadlock_free ? "yes" : "no") << "\n";
  if (!b.home_markings.empty()) {
    out << "home markings:";
    for (const auto& m : b.home_markings) out << " " << m.to_string();
    out << "\n";
  } else {
    out << "home markings: none\n";
  }
  if (!b.dead_markings.empty()) {
    out << "dead markings:";
    for (const auto& m : b.dead_markings) out << " " << m.to_string();
    out << "\n";
  }
  if (!b.dead_transitions.empty()) {
    out << "dead transitions:";
    for (const auto& t : b.dead_transitions) out << " " << t;
    out << "\n";
  }
  if (!b.dead_places.empty()) {
    out << "dead places:";
    for (const auto& p : b.dead_places) out << " " << p;
    out << "\n";
  }
}

void print_net_line(std::ostream& out, const Input& in) {
  out << "net " << in.doc.name << ": " << in.net.places().size() << " places, "
      << in.net.transitions().size() << " transitions, " << in.net.arcs().size() << " arcs; m0 = "
      << in.m0.to_string() << "\n";
}

void print_exploration(std::ostream& out, const ReachabilityGraph& rg, std::size_t cap) {
  out << "state space: " << rg.nodes().size() << " markings, " << rg.edges().size() << " edges";
  if (rg.complete())
    out << " (complete, cap " << cap << ")";
  else if (rg.status() == ReachabilityGraph::Status::unbounded)
    out << " (aborted: unbounded, " << rg.unbounded_witness()->second.to_string()
        << " dominates " << rg.unbounded_witness()->first.to_string() << ")";
  out << "\n";
}

void print_lucency(std::ostream& out, const LucencyVerdict& v) {
  if (v.lucent) {
    out << "lucency: lucent (every reachable marking has a unique enabled set)\n";
  } else if (v.reason == LucencyVerdict::Reason::unbounded) {
    out << "lucency: not lucent (unbounded nets are never lucent)\n";
  } else {
    out << "lucency: not lucent\n";
    out << "  witness: " << v.witness->first.to_string() << " and "
        << v.witness->second.to_string() << " enable the same transitions\n";
  }
}

// ---- subcommands ----------------------------------------------------------

int cmd_analyze(const std::string& file, const Global& g, std::ostream& out) {
  Input in = load_net(file);
  auto sr = classify_structure(in.net);
  ReachabilityGraph rg = explore_or_exceed(in.net, in.m0, g.cap);

  json j = report_shell("analyze", in, g);
  j["structure"] = structure_json(sr);
  j["exploration"] = exploration_json(rg);

  if (rg.complete()) {
    auto b = behavior(in.net, rg);
    auto verdict = check_lucency(in.net, rg);
    auto tr = transparency(in.net, rg);
    auto hc = find_home_clusters(in.net, in.m0, HomeClusterMode::behavioral, g.cap);
    auto pairs = find_conflict_pairs(in.net, rg);

    j["behavior"] = behavior_json(b);
    j["lucency"] = lucency_json(verdict);
    j["transparency"] = json{{"fully_transparent", tr.fully_transparent}};
    json clusters = json::array();
    for (const auto& c : hc.home_clusters) clusters.push_back(cluster_json(c));
    j["home_clusters"] = json{{"mode", "behavioral"}, {"clusters", clusters}};
    j["conflict_pairs"] = json{{"count", pairs.size()}};

    if (g.json_output) {
      out << j.dump(2) << "\n";
    } else {
      print_net_line(out, in);
      print_structure(out, sr);
      print_exploration(out, rg, g.cap);
      if (!g.quiet) print_behavior(out, b);
      print_lucency(out, verdict);
      out << "transparency: " << (tr.fully_transparent ? "fully transparent" : "not fully transparent")
          << "\n";
      out << "home clusters:";
      if (hc.home_clusters.empty()) out << " none";
      for (const auto& c : hc.home_clusters) out << " " << cluster_text(c);
      out << "\n";
      out << "conflict pairs: " << pairs.size() << "\n";
    }
  } else {
    // Unbounded: report what is still decidable.
    auto verdict = check_lucency(in.net, rg);
    j["lucency"] = lucency_json(verdict);
    if (g.json_output) {
      out << j.dump(2) << "\n";
    } else {
      print_net_line(out, in);
      print_structure(out, sr);
      print_exploration(out, rg, g.cap);
      print_lucency(out, verdict);
    }
  }
  return exit_ok;
}

int cmd_lucency(const std::string& file, const Global& g, std::ostream& out) {
  Input in = load_net(file);
  ReachabilityGraph rg = explore_or_exceed(in.net, in.m0, g.cap);
  auto verdict = check_lucency(in.net, rg);

  if (g.json_output) {
    json j = report_shell("lucency", in, g);
    j["exploration"] = exploration_json(rg);
    j["lucency"] = lucency_json(verdict);
    out << j.dump(2) << "\n";
  } else {
    if (!g.quiet) {
      print_net_line(out, in);
      print_exploration(out, rg, g.cap);
    }
    print_lucency(out, verdict);
  }
  return exit_ok;
}

int cmd_home_clusters(const std::string& file, const std::string& mode_name, const Global& g,
                      std::ostream& out) {
  Input in = load_net(file);
  HomeClusterMode mode = mode_name == "structural" ? HomeClusterMode::structural
                         : mode_name == "both"     ? HomeClusterMode::both
                                                   : HomeClusterMode::behavioral;
  auto report = find_home_clusters(in.net, in.m0, mode, g.cap);

  if (g.json_output) {
    json j = report_shell("home-clusters", in, g);
    json per = json::array();
    for (const auto& v : report.per_cluster) {
      json e{{"cluster", cluster_json(v.cluster)}, {"in_conn", v.in_conn}};
      e["behavioral_home"] = v.behavioral_home ? json(*v.behavioral_home) : json(nullptr);
      e["short_circuit_live_bounded"] =
          v.short_circuit_live_bounded ? json(*v.short_circuit_live_bounded) : json(nullptr);
      per.push_back(std::move(e));
    }
    json clusters = json::array();
    for (const auto& c : report.home_clusters) clusters.push_back(cluster_json(c));
    j["home_clusters"] = json{{"mode", mode_name}, {"clusters", clusters}, {"per_cluster", per}};
    out << j.dump(2) << "\n";
  } else {
    if (!g.quiet) {
      print_net_line(out, in);
      for (const auto& v : report.per_cluster) {
        out << "cluster " << cluster_text(v.cluster) << ": in-conn=" << (v.in_conn ? "yes" : "no");
        if (v.behavioral_home)
          out << " behavioral-home=" << (*v.behavioral_home ? "yes" : "no");
        if (v.short_circuit_live_bounded)
          out << " short-circuit-live-bounded=" << (*v.short_circuit_live_bounded ? "yes" : "no");
        out << "\n";
      }
    }
    out << "home clusters:";
    if (report.home_clusters.empty()) out << " none";
    for (const auto& c : report.home_clusters) out << " " << cluster_text(c);
    out << "\n";
  }
  return exit_ok;
}

int cmd_conflict_pairs(const std::string& file, const Global& g, std::ostream& out) {
  Input in = load_net(file);
  ReachabilityGraph rg = explore_or_exceed(in.net, in.m0, g.cap);
  if (!rg.complete())
    throw IncompleteStateSpace("conflict pairs need a complete state space (net is unbounded)");
  auto pairs = find_conflict_pairs(in.net, rg);

  if (g.json_output) {
    json j = report_shell("conflict-pairs", in, g);
    json arr = json::array();
    for (const auto& p : pairs)
      arr.push_back(json{{"m1", marking_json(p.m1)},
                         {"m2", marking_json(p.m2)},
                         {"agree", marking_json(p.agree)},
                         {"disagree1", marking_json(p.disagree1)},
                         {"disagree2", marking_json(p.disagree2)}});
    j["conflict_pairs"] = json{{"count", pairs.size()}, {"pairs", arr}};
    out << j.dump(2) << "\n";
  } else {
    if (!g.quiet) print_net_line(out, in);
    out << "conflict pairs: " << pairs.size() << "\n";
    for (const auto& p : pairs) {
      out << "  " << p.m1.to_string() << " / " << p.m2.to_string()
          << "  agree=" << p.agree.to_string() << " disagree1=" << p.disagree1.to_string()
          << " disagree2=" << p.disagree2.to_string() << "\n";
    }
  }
  return exit_ok;
}

int cmd_paths(const std::string& file, const std::string& cluster_seed, const std::string& from,
              const Global& g, std::ostream& out) {
  Input in = load_net(file);
  if (!in.net.has_node(cluster_seed)) throw NotInNet("unknown node: " + cluster_seed);
  const Cluster& target = in.net.cluster_of(cluster_seed);
  ReachabilityGraph rg = explore_or_exceed(in.net, in.m0, g.cap);
  if (!rg.complete())
    throw IncompleteStateSpace("rooted paths need a complete state space (net is unbounded)");

  std::vector<NodeId> sources;
  if (!from.empty()) {
    if (!in.net.is_place(from)) throw NotInNet("unknown place: " + from);
    sources.push_back(from);
  } else {
    sources = in.net.places();
  }

  json results = json::array();
  if (!g.json_output && !g.quiet) {
    print_net_line(out, in);
    out << "target cluster: " << cluster_text(target) << "\n";
  }
  for (const auto& p : sources) {
    auto path = rooted_path_from_place(in.net, rg, p, target);
    if (g.json_output) {
      json e{{"from", p}};
      if (path) {
        e["path"] = path->nodes;
        e["max_tokens"] = path_max_tokens(in.net, rg, *path);
      } else {
        e["path"] = nullptr;
      }
      results.push_back(std::move(e));
    } else {
      if (path)
        out << p << ": " << path->to_string()
            << " (max tokens " << path_max_tokens(in.net, rg, *path) << ")\n";
      else
        out << p << ": no rooted disentangled path (dead or unconnected place)\n";
    }
  }
  if (g.json_output) {
    json j = report_shell("paths", in, g);
    j["paths"] = json{{"cluster", cluster_json(target)}, {"results", results}};
    out << j.dump(2) << "\n";
  }
  return exit_ok;
}

int cmd_short_circuit(const std::string& file, const std::string& cluster_seed, const Global& g,
                      std::ostream& out) {
  Input in = load_net(file);
  if (!in.net.has_node(cluster_seed)) throw NotInNet("unknown node: " + cluster_seed);
  PetriNet cleaned = clean_net(in.net, in.m0);
  if (!cleaned.has_node(cluster_seed))
    throw NotInNet("cluster of " + cluster_seed + " is outside the connected part");
  const Cluster& target = cleaned.cluster_of(cluster_seed);
  ShortCircuit sc = short_circuit(cleaned, target, in.m0, g.cap);
  out << serialize_document(to_document(sc.net, in.m0, in.doc.name + "-sc"));
  return exit_ok;
}

int cmd_generate(const GenConfig& cfg, const std::string& name, std::ostream& out) {
  GeneratedNet g = generate(cfg);
  out << serialize_document(
      to_document(g.net, g.initial, name.empty() ? "g" + std::to_string(cfg.seed) : name));
  if (g.home_cluster) out << "# home cluster: " << cluster_text(*g.home_cluster) << "\n";
  return exit_ok;
}

int cmd_dot(const std::string& file, const std::vector<std::string>& highlights,
            const Global& g, std::ostream& out) {
  Input in = load_net(file);
  DotOptions options;
  options.graph_name = in.doc.name;
  options.marking = in.m0;
  for (const auto& list : highlights) {
    std::istringstream ss(list);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) options.highlights.insert(id);
  }
  (void)g;
  out << export_dot(in.net, options);
  return exit_ok;
}

int cmd_check_theorems(int seeds, std::size_t budget, const Global& g, std::ostream& out) {
  SuiteOptions opt;
  opt.pipeline_nets = seeds;
  opt.expedite_draws = seeds;
  opt.relating_nets = seeds;
  opt.expedite_budget = budget;
  opt.state_cap = g.cap < 10'000 ? g.cap : 10'000;
  if (!g.quiet && !g.json_output) opt.progress = &out;

  SuiteResult res = run_theorem_suite(opt);
  if (g.json_output) {
    json checks = json::array();
    for (const auto& c : res.checks)
      checks.push_back(json{{"name", c.name},
                            {"cases", c.cases},
                            {"failures", c.failures},
                            {"skipped", c.skipped},
                            {"notes", c.notes}});
    json j{{"tool", "lucent"},
           {"version", version},
           {"command", "check-theorems"},
           {"cap", g.cap},
           {"theorems", json{{"all_passed", res.all_passed()}, {"checks", checks}}}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : res.checks) {
      out << (c.failures == 0 ? "ok  " : "FAIL") << "  " << c.name << " (" << c.cases
          << " cases";
      if (c.skipped) out << ", " << c.skipped << " skipped";
      out << ")\n";
      for (const auto& n : c.notes) out << "      " << n << "\n";
    }
    out << (res.all_passed() ? "all checks passed\n" : "CHECKS FAILED\n");
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Global g;
  if (const char* env_cap = std::getenv("LUCENT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env_cap, &end, 10);
    if (end && *end == '\0' && v > 0) g.cap = static_cast<std::size_t>(v);
  }

  CLI::App app{"analysis of marked Petri nets: lucency, home clusters, and the machinery "
               "around them"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cap", g.cap, "state-space node budget")->capture_default_str();
  app.add_flag("--json", g.json_output, "machine-readable report");
  app.add_flag("--quiet", g.quiet, "verdict lines only");

  std::string file, mode = "behavioral", cluster_seed, from, name;
  std::vector<std::string> highlights;
  GenConfig gen_cfg;
  std::string mutation = "none";
  int seeds = 50;
  std::size_t budget = default_expedite_budget;

  auto* analyze = app.add_subcommand("analyze", "full structural and behavioral report");
  analyze->add_option("file", file, "net document (- for stdin)")->required();

  auto* lucency = app.add_subcommand("lucency", "is the net lucent?");
  lucency->add_option("file", file)->required();

  auto* home = app.add_subcommand("home-clusters", "detect home clusters");
  home->add_option("file", file)->required();
  home->add_option("--mode", mode, "behavioral|structural|both")
      ->check(CLI::IsMember({"behavioral", "structural", "both"}))
      ->capture_default_str();

  auto* pairs = app.add_subcommand("conflict-pairs", "list all conflict pairs");
  pairs->add_option("file", file)->required();

  auto* paths = app.add_subcommand("paths", "rooted disentangled paths into a cluster");
  paths->add_option("file", file)->required();
  paths->add_option("--cluster", cluster_seed, "any node of the target cluster")->required();
  paths->add_option("--from", from, "single source place (default: all places)");

  auto* short_circ = app.add_subcommand("short-circuit",
                                        "emit the cleaned net with the cluster short-circuited");
  short_circ->add_option("file", file)->required();
  short_circ->add_option("--cluster", cluster_seed, "any node of the cluster")->required();

  auto* gen = app.add_subcommand("generate", "emit a random proper free-choice net");
  gen->add_option("--seed", gen_cfg.seed, "generator seed")->required();
  gen->add_option("--places", gen_cfg.place_budget, "place budget")->capture_default_str();
  gen->add_option("--transitions", gen_cfg.transition_budget, "transition budget")
      ->capture_default_str();
  gen->add_option("--branching", gen_cfg.branching, "max choice/parallel width")
      ->capture_default_str();
  gen->add_flag("--home-cluster,!--no-home-cluster", gen_cfg.guarantee_home_cluster,
                "guarantee a home cluster (default on)");
  gen->add_flag("--strongly-connected", gen_cfg.strongly_connected,
                "add a regeneration transition");
  gen->add_option("--mutation", mutation, "none|break-free-choice|remove-home-cluster")
      ->check(CLI::IsMember({"none", "break-free-choice", "remove-home-cluster"}))
      ->capture_default_str();
  gen->add_option("--name", name, "document name");

  auto* check = app.add_subcommand("check-theorems", "run the randomized validation suite");
  check->add_option("--seeds", seeds, "draws per check")->capture_default_str();
  check->add_option("--budget", budget, "expedite closure budget")->capture_default_str();

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("file", file)->required();
  dot->add_option("--highlight", highlights, "comma-separated node ids (repeatable)");

  std::vector<const char*> argv;
  argv.push_back("lucent");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, g, out);
    if (lucency->parsed()) return cmd_lucency(file, g, out);
    if (home->parsed()) return cmd_home_clusters(file, mode, g, out);
    if (pairs->parsed()) return cmd_conflict_pairs(file, g, out);
    if (paths->parsed()) return cmd_paths(file, cluster_seed, from, g, out);
    if (short_circ->parsed()) return cmd_short_circuit(file, cluster_seed, g, out);
    if (gen->parsed()) {
      gen_cfg.mutation = mutation == "break-free-choice"    ? Mutation::break_free_choice
                         : mutation == "remove-home-cluster" ? Mutation::remove_home_cluster
                                                             : Mutation::none;
      return cmd_generate(gen_cfg, name, out);
    }
    if (check->parsed()) return cmd_check_theorems(seeds, budget, g, out);
    if (dot->parsed()) return cmd_dot(file, highlights, g, out);
    err << "usage error: no subcommand\n";
    return exit_usage;
  } catch (const StateSpaceExceeded& e) {
    err << "state space exceeded: " << e.what() << "\n";
    return exit_state_space;
  } catch (const IncompleteStateSpace& e) {
    err << "state space exceeded: " << e.what() << "\n";
    return exit_state_space;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace lucent::cli
