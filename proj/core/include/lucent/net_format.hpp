#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lucent/net.hpp"

namespace lucent {

/// Line-oriented net description:
///
///     # comment
///     net <name>
///     place <id> [init <k>]
///     trans <id> : <in> [<in> ...] -> <out> [<out> ...]
///
/// Either side of a transition may be empty. Arc weights are fixed at one;
/// repeating a place on one side is rejected.
struct PlaceDecl {
  NodeId id;
  long initial = 0;
  auto operator<=>(const PlaceDecl&) const = default;
};

struct TransDecl {
  NodeId id;
  std::vector<NodeId> inputs;   // sorted
  std::vector<NodeId> outputs;  // sorted
  auto operator<=>(const TransDecl&) const = default;
};

struct NetDocument {
  std::string name;
  std::vector<PlaceDecl> places;       // sorted by id
  std::vector<TransDecl> transitions;  // sorted by id
  auto operator<=>(const NetDocument&) const = default;
};

/// Parses the text into its canonical document form. Throws ParseError with
/// a 1-based line/column position.
NetDocument parse_document(const std::string& text);

/// Canonical rendering; parse_document(serialize_document(d)) == d.
std::string serialize_document(const NetDocument& d);

/// Builds the net and initial marking; validates all net invariants.
std::pair<PetriNet, Marking> instantiate(const NetDocument& d);

NetDocument to_document(const PetriNet& net, const Marking& m0, std::string name);

/// parse_document followed by instantiate.
std::pair<PetriNet, Marking> parse_net(const std::string& text);

}  // namespace lucent
