#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lucent {

using NodeId = std::string;

/// Multiset of places. Zero counts are never stored, so two markings compare
/// equal exactly when they carry the same tokens, and std::map ordering gives
/// a stable lexicographic order over (place, count) pairs.
class Marking {
public:
  Marking() = default;

  /// One token per listed place; repeats accumulate.
  Marking(std::initializer_list<NodeId> places);

  static Marking from_counts(const std::map<NodeId, long>& counts);

  long count(const NodeId& place) const;
  bool marks(const NodeId& place) const { return count(place) > 0; }
  bool empty() const { return counts_.empty(); }

  /// Total number of tokens.
  long total() const;
  /// Tokens sitting on the given places.
  long total_over(const std::set<NodeId>& places) const;
  long total_over(const std::vector<NodeId>& places) const;
  /// Largest per-place count (0 for the empty marking).
  long max_count() const;

  std::set<NodeId> support() const;

  void add(const NodeId& place, long tokens = 1);
  /// Removes tokens; the marking must hold at least that many.
  void remove(const NodeId& place, long tokens = 1);

  Marking plus(const Marking& other) const;
  /// Multiset difference; requires *this >= other.
  Marking minus(const Marking& other) const;
  static Marking pointwise_min(const Marking& a, const Marking& b);

  /// Multiset >=.
  bool dominates(const Marking& other) const;
  /// Multiset >.
  bool strictly_dominates(const Marking& other) const;

  const std::map<NodeId, long>& counts() const { return counts_; }

  /// "[p1,p2^2]" with places in id order; "[]" when empty.
  std::string to_string() const;

  auto operator<=>(const Marking&) const = default;

private:
  std::map<NodeId, long> counts_;
};

}  // namespace lucent
