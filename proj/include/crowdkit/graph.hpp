#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace crowdkit {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source;
  NodeId target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(e.source) << 32) | e.target);
  }
};

// Simple graph over dense node ids 0..n-1. No self-loops, no parallel edges.
// Adjacency lists keep insertion order, which makes neighbor iteration (and
// therefore any RNG consumption that depends on it) deterministic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count, bool directed = false);

  bool directed() const noexcept { return directed_; }
  std::size_t node_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return out_.empty(); }
  bool contains(NodeId v) const noexcept { return v < out_.size(); }

  // Returns false (and changes nothing) when the edge already exists.
  // Throws std::invalid_argument on a self-loop or unknown endpoint.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;

  // Undirected: all neighbors. Directed: successors.
  std::span<const NodeId> neighbors(NodeId v) const { return out_[v]; }
  // Undirected: same as neighbors(). Directed: predecessors.
  std::span<const NodeId> predecessors(NodeId v) const { return directed_ ? in_[v] : out_[v]; }

  std::size_t degree(NodeId v) const {
    return directed_ ? out_[v].size() + in_[v].size() : out_[v].size();
  }
  // Undirected graphs define in-degree as degree.
  std::size_t in_degree(NodeId v) const { return predecessors(v).size(); }
  std::size_t out_degree(NodeId v) const { return out_[v].size(); }

  // Edge list in canonical form: source < target for undirected graphs,
  // sorted ascending.
  std::vector<Edge> edges() const;

  // Same node count, direction and edge set (adjacency order ignored).
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;  // directed only
};

}  // namespace crowdkit
