#include "lucent/dot_export.hpp"

#include <sstream>

namespace lucent {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const PetriNet& net, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph " << quoted(options.graph_name) << " {\n";
  out << "  rankdir=LR;\n";

  for (const auto& p : net.places()) {
    std::string label = p;
    if (options.marking) {
      long k = options.marking->count(p);
      if (k == 1)
        label += "\\n•";
      else if (k > 1)
        label += "\\n" + std::to_string(k) + "•";
    }
    out << "  " << quoted(p) << " [shape=circle, label=" << quoted(label);
    if (options.highlights.count(p)) out << ", color=crimson, penwidth=3";
    out << "];\n";
  }
  for (const auto& t : net.transitions()) {
    out << "  " << quoted(t) << " [shape=box, label=" << quoted(t);
    if (options.highlights.count(t)) out << ", color=crimson, penwidth=3";
    out << "];\n";
  }
  for (const auto& a : net.arcs())
    out << "  " << quoted(a.source) << " -> " << quoted(a.target) << ";\n";

  out << "}\n";
  return out.str();
}

}  // namespace lucent
