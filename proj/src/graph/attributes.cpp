#include "crowdkit/attributes.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

namespace crowdkit {

ValueKind kind_of(const AttributeValue& value) noexcept {
  switch (value.index()) {
    case 0: return ValueKind::number;
    case 1: return ValueKind::category;
    default: return ValueKind::integer;
  }
}

std::string_view kind_name(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::number: return "number";
    case ValueKind::category: return "category";
    case ValueKind::integer: return "integer";
  }
  return "unknown";
}

std::optional<ValueKind> parse_kind(std::string_view name) noexcept {
  if (name == "number") return ValueKind::number;
  if (name == "category") return ValueKind::category;
  if (name == "integer") return ValueKind::integer;
  return std::nullopt;
}

std::optional<double> as_number(const AttributeValue& value) noexcept {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  return std::nullopt;
}

std::string to_text(const AttributeValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  std::array<char, 32> buf{};
  std::to_chars_result res;
  if (const auto* d = std::get_if<double>(&value))
    res = std::to_chars(buf.data(), buf.data() + buf.size(), *d);
  else
    res = std::to_chars(buf.data(), buf.data() + buf.size(), std::get<std::int64_t>(value));
  return std::string(buf.data(), res.ptr);
}

namespace {

void check_kind(std::string_view key, ValueKind have, ValueKind want) {
  if (have != want)
    throw std::invalid_argument("attribute '" + std::string(key) + "' holds " +
                                std::string(kind_name(have)) + " values, got " +
                                std::string(kind_name(want)));
}

}  // namespace

AttributeTable::NodeColumn& AttributeTable::node_column(std::string_view key, ValueKind kind) {
  if (key.empty()) throw std::invalid_argument("attribute key must be non-empty");
  auto it = node_cols_.find(key);
  if (it == node_cols_.end())
    it = node_cols_.emplace(std::string(key), NodeColumn{kind, std::vector<std::optional<AttributeValue>>(node_count_)})
             .first;
  else
    check_kind(key, it->second.kind, kind);
  return it->second;
}

AttributeTable::EdgeColumn& AttributeTable::edge_column(std::string_view key, ValueKind kind) {
  if (key.empty()) throw std::invalid_argument("attribute key must be non-empty");
  auto it = edge_cols_.find(key);
  if (it == edge_cols_.end())
    it = edge_cols_.emplace(std::string(key), EdgeColumn{kind, {}}).first;
  else
    check_kind(key, it->second.kind, kind);
  return it->second;
}

void AttributeTable::set_node(NodeId v, std::string_view key, AttributeValue value) {
  if (v >= node_count_) throw std::out_of_range("node " + std::to_string(v) + " out of range");
  node_column(key, kind_of(value)).values[v] = std::move(value);
}

const AttributeValue* AttributeTable::node(NodeId v, std::string_view key) const {
  auto it = node_cols_.find(key);
  if (it == node_cols_.end() || v >= node_count_) return nullptr;
  const auto& slot = it->second.values[v];
  return slot ? &*slot : nullptr;
}

bool AttributeTable::erase_node(NodeId v, std::string_view key) {
  auto it = node_cols_.find(key);
  if (it == node_cols_.end() || v >= node_count_ || !it->second.values[v]) return false;
  it->second.values[v].reset();
  return true;
}

std::optional<ValueKind> AttributeTable::node_kind(std::string_view key) const {
  auto it = node_cols_.find(key);
  if (it == node_cols_.end()) return std::nullopt;
  return it->second.kind;
}

std::vector<std::string> AttributeTable::node_keys() const {
  std::vector<std::string> keys;
  for (const auto& [k, _] : node_cols_) keys.push_back(k);
  return keys;
}

void AttributeTable::set_edge(Edge e, std::string_view key, AttributeValue value) {
  if (e.source >= node_count_ || e.target >= node_count_)
    throw std::out_of_range("edge endpoint out of range");
  edge_column(key, kind_of(value)).values[e] = std::move(value);
}

const AttributeValue* AttributeTable::edge_exact(Edge e, std::string_view key) const {
  auto it = edge_cols_.find(key);
  if (it == edge_cols_.end()) return nullptr;
  auto found = it->second.values.find(e);
  return found == it->second.values.end() ? nullptr : &found->second;
}

const AttributeValue* AttributeTable::edge(Edge e, std::string_view key, bool undirected) const {
  auto it = edge_cols_.find(key);
  if (it == edge_cols_.end()) return nullptr;
  const auto& values = it->second.values;
  if (auto found = values.find(e); found != values.end()) return &found->second;
  if (undirected)
    if (auto found = values.find(Edge{e.target, e.source}); found != values.end()) return &found->second;
  return nullptr;
}

void AttributeTable::erase_edge(Edge e, bool both_orientations) {
  for (auto& [_, col] : edge_cols_) {
    col.values.erase(e);
    if (both_orientations) col.values.erase(Edge{e.target, e.source});
  }
}

std::optional<ValueKind> AttributeTable::edge_kind(std::string_view key) const {
  auto it = edge_cols_.find(key);
  if (it == edge_cols_.end()) return std::nullopt;
  return it->second.kind;
}

std::vector<std::string> AttributeTable::edge_keys() const {
  std::vector<std::string> keys;
  for (const auto& [k, _] : edge_cols_) keys.push_back(k);
  return keys;
}

std::vector<std::pair<Edge, AttributeValue>> AttributeTable::edge_values(std::string_view key) const {
  std::vector<std::pair<Edge, AttributeValue>> out;
  auto it = edge_cols_.find(key);
  if (it == edge_cols_.end()) return out;
  out.assign(it->second.values.begin(), it->second.values.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void AttributeTable::declare_node_key(std::string_view key, ValueKind kind) { node_column(key, kind); }

void AttributeTable::declare_edge_key(std::string_view key, ValueKind kind) { edge_column(key, kind); }

bool operator==(const AttributeTable& a, const AttributeTable& b) {
  return a.node_count_ == b.node_count_ && a.node_cols_ == b.node_cols_ && a.edge_cols_ == b.edge_cols_;
}

}  // namespace crowdkit
