#include "lucent/net_format.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lucent {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
      return false;
  return true;
}

void check_side(const std::vector<NodeId>& side, std::size_t line, std::size_t column,
                const NodeId& trans) {
  for (std::size_t i = 1; i < side.size(); ++i)
    if (side[i] == side[i - 1])
      throw ParseError(line, column, "place " + side[i] + " listed twice on one side of " +
                                         trans + " (arc weights are fixed at 1)");
}

}  // namespace

NetDocument parse_document(const std::string& text) {
  NetDocument doc;
  bool saw_net = false;
  std::set<NodeId> declared_places, declared_ids;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;

    if (head == "net") {
      if (saw_net) throw ParseError(lineno, tokens[0].column, "duplicate net header");
      if (tokens.size() != 2)
        throw ParseError(lineno, tokens[0].column, "expected: net <name>");
      if (!valid_id(tokens[1].text))
        throw ParseError(lineno, tokens[1].column, "invalid net name: " + tokens[1].text);
      doc.name = tokens[1].text;
      saw_net = true;
    } else if (head == "place") {
      if (!saw_net) throw ParseError(lineno, tokens[0].column, "net header must come first");
      if (tokens.size() != 2 && tokens.size() != 4)
        throw ParseError(lineno, tokens[0].column, "expected: place <id> [init <k>]");
      if (!valid_id(tokens[1].text))
        throw ParseError(lineno, tokens[1].column, "invalid place id: " + tokens[1].text);
      PlaceDecl p{tokens[1].text, 0};
      if (!declared_ids.insert(p.id).second)
        throw ParseError(lineno, tokens[1].column, "duplicate id: " + p.id);
      if (tokens.size() == 4) {
        if (tokens[2].text != "init")
          throw ParseError(lineno, tokens[2].column, "expected 'init', got " + tokens[2].text);
        try {
          std::size_t used = 0;
          p.initial = std::stol(tokens[3].text, &used);
          if (used != tokens[3].text.size() || p.initial < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError(lineno, tokens[3].column,
                           "token count must be a non-negative integer, got " + tokens[3].text);
        }
      }
      declared_places.insert(p.id);
      doc.places.push_back(std::move(p));
    } else if (head == "trans") {
      if (!saw_net) throw ParseError(lineno, tokens[0].column, "net header must come first");
      if (tokens.size() < 4)
        throw ParseError(lineno, tokens[0].column,
                         "expected: trans <id> : <in> ... -> <out> ...");
      if (!valid_id(tokens[1].text))
        throw ParseError(lineno, tokens[1].column, "invalid transition id: " + tokens[1].text);
      TransDecl t{tokens[1].text, {}, {}};
      if (!declared_ids.insert(t.id).second)
        throw ParseError(lineno, tokens[1].column, "duplicate id: " + t.id);
      if (tokens[2].text != ":")
        throw ParseError(lineno, tokens[2].column, "expected ':' after the transition id");
      bool after_arrow = false;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        if (tokens[i].text == "->") {
          if (after_arrow)
            throw ParseError(lineno, tokens[i].column, "duplicate '->'");
          after_arrow = true;
          continue;
        }
        if (!valid_id(tokens[i].text))
          throw ParseError(lineno, tokens[i].column, "invalid place id: " + tokens[i].text);
        if (!declared_places.count(tokens[i].text))
          throw ParseError(lineno, tokens[i].column,
                           "transition " + t.id + " references undeclared place " +
                               tokens[i].text);
        (after_arrow ? t.outputs : t.inputs).push_back(tokens[i].text);
      }
      if (!after_arrow)
        throw ParseError(lineno, tokens.back().column, "missing '->' in transition " + t.id);
      std::sort(t.inputs.begin(), t.inputs.end());
      std::sort(t.outputs.begin(), t.outputs.end());
      check_side(t.inputs, lineno, tokens[0].column, t.id);
      check_side(t.outputs, lineno, tokens[0].column, t.id);
      doc.transitions.push_back(std::move(t));
    } else {
      throw ParseError(lineno, tokens[0].column, "unknown directive: " + head);
    }
  }

  if (!saw_net) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing net header");

  std::sort(doc.places.begin(), doc.places.end());
  std::sort(doc.transitions.begin(), doc.transitions.end());
  return doc;
}

std::string serialize_document(const NetDocument& d) {
  std::ostringstream out;
  out << "net " << d.name << "\n";
  for (const auto& p : d.places) {
    out << "place " << p.id;
    if (p.initial > 0) out << " init " << p.initial;
    out << "\n";
  }
  for (const auto& t : d.transitions) {
    out << "trans " << t.id << " :";
    for (const auto& p : t.inputs) out << " " << p;
    out << " ->";
    for (const auto& p : t.outputs) out << " " << p;
    out << "\n";
  }
  return out.str();
}

std::pair<PetriNet, Marking> instantiate(const NetDocument& d) {
  std::vector<NodeId> places, transitions;
  std::vector<Arc> arcs;
  Marking m0;
  for (const auto& p : d.places) {
    places.push_back(p.id);
    if (p.initial > 0) m0.add(p.id, p.initial);
  }
  for (const auto& t : d.transitions) {
    transitions.push_back(t.id);
    for (const auto& p : t.inputs) arcs.push_back({p, t.id});
    for (const auto& p : t.outputs) arcs.push_back({t.id, p});
  }
  return {PetriNet::create(std::move(places), std::move(transitions), std::move(arcs)),
          std::move(m0)};
}

NetDocument to_document(const PetriNet& net, const Marking& m0, std::string name) {
  NetDocument d;
  d.name = std::move(name);
  for (const auto& p : net.places()) d.places.push_back({p, m0.count(p)});
  for (const auto& t : net.transitions())
    d.transitions.push_back({t, net.preset(t), net.postset(t)});
  return d;
}

std::pair<PetriNet, Marking> parse_net(const std::string& text) {
  return instantiate(parse_document(text));
}

}  // namespace lucent
