#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "relaycon/graph.hpp"

// Text format: '#' comment lines, a leading "nodes <n>" directive, an
// optional "undirected" directive (mirrors every edge that follows), then
// "edge <u> <v>" lines with 1-based ids. Self-loops are implied and may also
// be listed explicitly; listing any adjacency twice is an error.

namespace relaycon {

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_number(line) {}
  int line_number;
};

inline DirectedGraph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool have_nodes = false, undirected = false, seen_edge = false;
  int n = 0;
  DirectedGraph g(2);
  std::set<std::pair<int, int>> declared;
  while (std::getline(in, line)) {
    ++lineno;
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "nodes") {
      if (have_nodes) throw GraphFormatError("repeated nodes directive", lineno);
      if (!(ls >> n)) throw GraphFormatError("nodes needs a count", lineno);
      if (n < 2 || n > 62)
        throw GraphFormatError("node count out of range", lineno);
      g = DirectedGraph(n);
      have_nodes = true;
    } else if (word == "undirected") {
      if (!have_nodes) throw GraphFormatError("undirected before nodes", lineno);
      if (seen_edge)
        throw GraphFormatError("undirected must precede edge lines", lineno);
      undirected = true;
    } else if (word == "edge") {
      if (!have_nodes) throw GraphFormatError("edge before nodes", lineno);
      int u = 0, v = 0;
      if (!(ls >> u >> v)) throw GraphFormatError("edge needs two ids", lineno);
      if (u < 1 || u > n || v < 1 || v > n)
        throw GraphFormatError("node id out of range", lineno);
      seen_edge = true;
      if (!declared.emplace(u, v).second)
        throw GraphFormatError("duplicate edge", lineno);
      g.add_edge(u, v);
      if (undirected && u != v) {
        if (!declared.emplace(v, u).second)
          throw GraphFormatError("duplicate edge", lineno);
        g.add_edge(v, u);
      }
    } else {
      throw GraphFormatError("unknown directive: " + word, lineno);
    }
    std::string extra;
    if (ls >> extra) throw GraphFormatError("trailing tokens", lineno);
  }
  if (!have_nodes) throw GraphFormatError("missing nodes directive", lineno);
  return g;
}

// Canonical form: plain directed edge list, ascending, self-loops explicit.
inline void write_graph(std::ostream& out, const DirectedGraph& g,
                        const std::string& comment = "") {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "nodes " << g.size() << "\n";
  for (auto [u, v] : g.edges()) out << "edge " << u << " " << v << "\n";
}

}  // namespace relaycon
