#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "crowdkit/attributes.hpp"
#include "crowdkit/graph.hpp"

namespace crowdkit {

// Per-node type label; index = node id.
using NodeLabels = std::vector<std::string>;

// Whitespace-separated id pairs, one per line; blank lines and lines starting
// with '#' are skipped. Ids are remapped to 0..n-1 in first-seen order,
// duplicate edges collapse and self-loops are dropped.
Graph load_edge_list(const std::filesystem::path& path, bool directed = false);
Graph read_edge_list(std::istream& in, bool directed = false, const std::string& source = "<stream>");
void write_edge_list(const Graph& graph, const std::filesystem::path& path);

// GEXF 1.2. The node type is stored as the node attribute `node_type`.
// Value kinds map to GEXF types double / string / long. On undirected graphs
// an edge value stored under the (target, source) orientation is written to a
// separate attribute titled `<key>@rev`.
struct GexfDocument {
  Graph graph;
  NodeLabels states;
  AttributeTable attrs;
};

void write_gexf(const Graph& graph, const NodeLabels& states, const AttributeTable& attrs,
                const std::filesystem::path& path);
void write_gexf(const Graph& graph, const NodeLabels& states, const AttributeTable& attrs, std::ostream& out);
GexfDocument load_gexf(const std::filesystem::path& path);
GexfDocument read_gexf(std::istream& in, const std::string& source = "<stream>");

}  // namespace crowdkit
