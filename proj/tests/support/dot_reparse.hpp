#pragma once

// Minimal parser for the DOT text emitted by graph_dot, so tests can check
// the rendered graph semantically (vertex labels and edge multiset) instead
// of only byte-for-byte.

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace testgen {

struct DotEdge {
  int from = 0, to = 0;
  long long w = 0;
  bool operator==(const DotEdge& o) const {
    return from == o.from && to == o.to && w == o.w;
  }
  bool operator<(const DotEdge& o) const {
    if (from != o.from) return from < o.from;
    if (to != o.to) return to < o.to;
    return w < o.w;
  }
};

struct DotGraph {
  std::vector<std::string> vertex_labels;  // index = vertex id
  std::vector<DotEdge> edges;
};

inline DotGraph reparse_dot(const std::string& dot) {
  DotGraph g;
  std::istringstream in(dot);
  std::string line;
  while (std::getline(in, line)) {
    auto v = line.find('v');
    if (v == std::string::npos) continue;
    auto label = line.find("[label=\"");
    if (label == std::string::npos) continue;
    auto lend = line.find('"', label + 8);
    if (lend == std::string::npos) continue;
    std::string text = line.substr(label + 8, lend - (label + 8));
    auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      std::size_t id = std::strtoull(line.c_str() + v + 1, nullptr, 10);
      if (g.vertex_labels.size() <= id) g.vertex_labels.resize(id + 1);
      g.vertex_labels[id] = text;
    } else {
      DotEdge e;
      e.from = int(std::strtol(line.c_str() + v + 1, nullptr, 10));
      auto v2 = line.find('v', arrow);
      e.to = int(std::strtol(line.c_str() + v2 + 1, nullptr, 10));
      e.w = std::strtoll(text.c_str(), nullptr, 10);
      g.edges.push_back(e);
    }
  }
  return g;
}

}  // namespace testgen
