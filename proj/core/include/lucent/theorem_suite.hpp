#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lucent/generator.hpp"

namespace lucent {

struct SuiteOptions {
  std::uint64_t base_seed = 2026;
  int pipeline_nets = 60;    // home-cluster nets pushed through the full pipeline
  int expedite_draws = 60;   // (net, marking, sequence) draws for the permutation check
  int relating_nets = 60;    // nets for the three-way equivalence check
  int path_samples = 10;     // (place, home cluster) samples per net
  std::size_t state_cap = 10'000;
  std::size_t expedite_budget = 10'000;
  bool timing_check = true;  // wall-clock growth of structural detection
  std::ostream* progress = nullptr;
};

struct CheckResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  long skipped = 0;
  std::vector<std::string> notes;  // first few failure diagnostics
};

struct SuiteResult {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.failures > 0) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Randomized validation of everything the analyzers promise about proper
/// free-choice nets with home clusters, plus the structural-detection
/// complexity probe and the document round-trip. Check names:
///   home-cluster-pipeline, rooted-path-safety, expedite-permutations,
///   relating-equivalence, short-circuit-structure, lucency-state-bound,
///   transparency-implies-lucency, cluster-dichotomy,
///   strongly-connected-home-cluster, perpetual-subclass,
///   detection-complexity, document-round-trip.
SuiteResult run_theorem_suite(const SuiteOptions& options = {});

/// Deterministic net family with exactly `clusters` clusters (>= 3) whose
/// reachable state space stays at three markings regardless of size: a
/// two-way choice feeds a synchronization that can never fire, followed by a
/// long dead chain. Used to probe per-cluster detection cost.
GeneratedNet make_cluster_family(std::size_t clusters);

}  // namespace lucent
