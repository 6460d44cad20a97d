#pragma once

#include <optional>
#include <set>
#include <string>

#include "lucent/net.hpp"

namespace lucent {

struct DotOptions {
  std::optional<Marking> marking;  // token annotations
  std::set<NodeId> highlights;     // rendered with a thick colored border
  std::string graph_name = "net";
};

/// Graphviz rendering: places as circles, transitions as boxes, one node
/// statement per node and one edge statement per arc, in sorted order.
std::string export_dot(const PetriNet& net, const DotOptions& options = {});

}  // namespace lucent
