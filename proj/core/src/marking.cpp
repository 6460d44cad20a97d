#include "lucent/marking.hpp"

#include <algorithm>
#include <stdexcept>

namespace lucent {

Marking::Marking(std::initializer_list<NodeId> places) {
  for (const auto& p : places) add(p);
}

Marking Marking::from_counts(const std::map<NodeId, long>& counts) {
  Marking m;
  for (const auto& [place, n] : counts) {
    if (n < 0) throw std::invalid_argument("negative token count for " + place);
    if (n > 0) m.counts_[place] = n;
  }
  return m;
}

long Marking::count(const NodeId& place) const {
  auto it = counts_.find(place);
  return it == counts_.end() ? 0 : it->second;
}

long Marking::total() const {
  long n = 0;
  for (const auto& [_, c] : counts_) n += c;
  return n;
}

long Marking::total_over(const std::set<NodeId>& places) const {
  long n = 0;
  for (const auto& p : places) n += count(p);
  return n;
}

long Marking::total_over(const std::vector<NodeId>& places) const {
  long n = 0;
  for (const auto& p : places) n += count(p);
  return n;
}

long Marking::max_count() const {
  long n = 0;
  for (const auto& [_, c] : counts_) n = std::max(n, c);
  return n;
}

std::set<NodeId> Marking::support() const {
  std::set<NodeId> s;
  for (const auto& [place, _] : counts_) s.insert(place);
  return s;
}

void Marking::add(const NodeId& place, long tokens) {
  if (tokens < 0) throw std::invalid_argument("cannot add a negative token count");
  if (tokens == 0) return;
  counts_[place] += tokens;
}

void Marking::remove(const NodeId& place, long tokens) {
  if (tokens < 0) throw std::invalid_argument("cannot remove a negative token count");
  if (tokens == 0) return;
  auto it = counts_.find(place);
  if (it == counts_.end() || it->second < tokens)
    throw std::logic_error("marking holds fewer than " + std::to_string(tokens) + " tokens in " + place);
  it->second -= tokens;
  if (it->second == 0) counts_.erase(it);
}

Marking Marking::plus(const Marking& other) const {
  Marking m = *this;
  for (const auto& [place, n] : other.counts_) m.add(place, n);
  return m;
}

Marking Marking::minus(const Marking& other) const {
  Marking m = *this;
  for (const auto& [place, n] : other.counts_) m.remove(place, n);
  return m;
}

Marking Marking::pointwise_min(const Marking& a, const Marking& b) {
  Marking m;
  for (const auto& [place, n] : a.counts_) {
    long k = std::min(n, b.count(place));
    if (k > 0) m.counts_[place] = k;
  }
  return m;
}

bool Marking::dominates(const Marking& other) const {
  for (const auto& [place, n] : other.counts_)
    if (count(place) < n) return false;
  return true;
}

bool Marking::strictly_dominates(const Marking& other) const {
  return dominates(other) && *this != other;
}

std::string Marking::to_string() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [place, n] : counts_) {
    if (!first) s += ",";
    first = false;
    s += place;
    if (n > 1) s += "^" + std::to_string(n);
  }
  s += "]";
  return s;
}

}  // namespace lucent
