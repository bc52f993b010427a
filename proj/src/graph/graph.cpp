#include "crowdkit/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace crowdkit {

namespace {

bool erase_value(std::vector<NodeId>& list, NodeId value) {
  auto it = std::find(list.begin(), list.end(), value);
  if (it == list.end()) return false;
  list.erase(it);
  return true;
}

}  // namespace

Graph::Graph(std::size_t node_count, bool directed)
    : directed_(directed), out_(node_count), in_(directed ? node_count : 0) {}

bool Graph::add_edge(NodeId u, NodeId v) {
  if (!contains(u) || !contains(v))
    throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") references an unknown node");
  if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
  if (has_edge(u, v)) return false;
  out_[u].push_back(v);
  if (directed_)
    in_[v].push_back(u);
  else
    out_[v].push_back(u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  if (!contains(u) || !contains(v)) return false;
  if (!erase_value(out_[u], v)) return false;
  if (directed_)
    erase_value(in_[v], u);
  else
    erase_value(out_[v], u);
  --edge_count_;
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return false;
  const auto& from_u = out_[u];
  const auto& into_v = directed_ ? in_[v] : out_[v];
  // scan the shorter list
  if (from_u.size() <= into_v.size()) return std::find(from_u.begin(), from_u.end(), v) != from_u.end();
  return std::find(into_v.begin(), into_v.end(), u) != into_v.end();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId v : out_[u])
      if (directed_ || u < v) result.push_back({u, v});
  std::sort(result.begin(), result.end());
  return result;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.directed_ == b.directed_ && a.node_count() == b.node_count() &&
         a.edge_count_ == b.edge_count_ && a.edges() == b.edges();
}

}  // namespace crowdkit
