#include "framemap/dot.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <utility>
#include <vector>

namespace framemap {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string flow_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string export_dot(const NarrativeMap& map, const FrameTaxonomy& taxonomy) {
  std::vector<const MapNode*> nodes;
  nodes.reserve(map.nodes.size());
  for (const auto& n : map.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const MapNode* a, const MapNode* b) { return a->doc.id < b->doc.id; });

  std::vector<const MapEdge*> edges;
  edges.reserve(map.edges.size());
  for (const auto& e : map.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const MapEdge* a, const MapEdge* b) {
    return std::tie(a->from, a->to) < std::tie(b->from, b->to);
  });

  std::set<std::pair<std::string, std::string>> main_pairs;
  for (size_t i = 0; i + 1 < map.main_storyline.size(); ++i)
    main_pairs.emplace(map.main_storyline[i], map.main_storyline[i + 1]);

  std::string out;
  out += "digraph narrative_map {\n";
  out += "  rankdir=TB;\n";
  out += "  node [shape=box];\n";
  for (const MapNode* n : nodes) {
    const std::string& name = map.grouped_frames ? taxonomy.grouped_name(n->doc.frame)
                                                 : taxonomy.raw_name(n->doc.frame);
    out += "  \"" + dot_escape(n->doc.id) + "\" [label=\"" +
           dot_escape(n->doc.headline) + "\\n[" + dot_escape(name) + "]\"];\n";
  }
  for (const MapEdge* e : edges) {
    out += "  \"" + dot_escape(e->from) + "\" -> \"" + dot_escape(e->to) +
           "\" [label=\"" + flow_label(e->flow) + "\"";
    if (main_pairs.count({e->from, e->to})) out += ", style=bold";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace framemap
