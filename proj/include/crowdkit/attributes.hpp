#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "crowdkit/graph.hpp"

namespace crowdkit {

enum class ValueKind : std::uint8_t { number, category, integer };

// number: double, category: text token, integer: signed 64-bit.
using AttributeValue = std::variant<double, std::string, std::int64_t>;

ValueKind kind_of(const AttributeValue& value) noexcept;
std::string_view kind_name(ValueKind kind) noexcept;
std::optional<ValueKind> parse_kind(std::string_view name) noexcept;

// Numeric view of a number or integer value; nullopt for categories.
std::optional<double> as_number(const AttributeValue& value) noexcept;
// Shortest text that parses back to the same value.
std::string to_text(const AttributeValue& value);

// Ordered key -> value map; used for network parameters.
using ParamMap = std::map<std::string, AttributeValue, std::less<>>;

// Node and edge attributes stored column-wise. Each key holds a single value
// kind across all nodes (or edges); writing a different kind throws.
//
// Edge values are keyed by the ordered pair (source, target). On undirected
// graphs a lookup for (u, v) falls back to (v, u), so a plain edge parameter
// needs to be stored once while direction-specific values (e.g. an influence
// probability toward each endpoint) can be stored under both orientations.
class AttributeTable {
 public:
  AttributeTable() = default;
  explicit AttributeTable(std::size_t node_count) : node_count_(node_count) {}

  std::size_t node_count() const noexcept { return node_count_; }

  void set_node(NodeId v, std::string_view key, AttributeValue value);
  const AttributeValue* node(NodeId v, std::string_view key) const;
  bool erase_node(NodeId v, std::string_view key);
  std::optional<ValueKind> node_kind(std::string_view key) const;
  std::vector<std::string> node_keys() const;

  void set_edge(Edge e, std::string_view key, AttributeValue value);
  // Exact orientation only.
  const AttributeValue* edge_exact(Edge e, std::string_view key) const;
  // Exact orientation, then the reverse one when `undirected`.
  const AttributeValue* edge(Edge e, std::string_view key, bool undirected) const;
  // Removes values stored under e and, unless told otherwise, under (target, source).
  void erase_edge(Edge e, bool both_orientations = true);
  std::optional<ValueKind> edge_kind(std::string_view key) const;
  std::vector<std::string> edge_keys() const;
  // All stored (edge, value) pairs of a key, sorted by edge.
  std::vector<std::pair<Edge, AttributeValue>> edge_values(std::string_view key) const;

  // Declares a key with its kind without storing values.
  void declare_node_key(std::string_view key, ValueKind kind);
  void declare_edge_key(std::string_view key, ValueKind kind);

  friend bool operator==(const AttributeTable& a, const AttributeTable& b);

 private:
  struct NodeColumn {
    ValueKind kind;
    std::vector<std::optional<AttributeValue>> values;
    friend bool operator==(const NodeColumn&, const NodeColumn&) = default;
  };
  struct EdgeColumn {
    ValueKind kind;
    std::unordered_map<Edge, AttributeValue, EdgeHash> values;
    friend bool operator==(const EdgeColumn&, const EdgeColumn&) = default;
  };

  NodeColumn& node_column(std::string_view key, ValueKind kind);
  EdgeColumn& edge_column(std::string_view key, ValueKind kind);

  std::size_t node_count_ = 0;
  std::map<std::string, NodeColumn, std::less<>> node_cols_;
  std::map<std::string, EdgeColumn, std::less<>> edge_cols_;
};

}  // namespace crowdkit
