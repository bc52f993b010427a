#include <algorithm>

#include "crowdkit/collect.hpp"
#include "io_util.hpp"

namespace crowdkit::collect {

using nlohmann::json;

namespace {

json typed_json(const AttributeValue& v) {
  switch (kind_of(v)) {
    case ValueKind::number: return std::get<double>(v);
    case ValueKind::integer: return std::get<std::int64_t>(v);
    case ValueKind::category: return std::get<std::string>(v);
  }
  return nullptr;
}

AttributeValue typed_from(const json& j, ValueKind kind, const std::string& source, const std::string& what) {
  switch (kind) {
    case ValueKind::number:
      if (j.is_number()) return j.get<double>();
      break;
    case ValueKind::integer:
      if (j.is_number_integer()) return j.get<std::int64_t>();
      break;
    case ValueKind::category:
      if (j.is_string()) return j.get<std::string>();
      break;
  }
  throw ParseError(source, 0, what + ": value does not match declared kind " + std::string(kind_name(kind)));
}

ValueKind kind_from(const json& j, const std::string& source) {
  if (!j.is_string()) throw ParseError(source, 0, "attribute kind must be a string");
  auto k = parse_kind(j.get<std::string>());
  if (!k) throw ParseError(source, 0, "unknown attribute kind '" + j.get<std::string>() + "'");
  return *k;
}

const json& member(const json& obj, const char* key, const std::string& source) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(source, 0, std::string("missing field '") + key + "'");
  return obj[key];
}

SnapshotRecord snapshot_from_json_impl(const std::string& text, const std::string& source);

}  // namespace

std::string snapshot_file_stem(long iteration) { return "iter_" + std::to_string(iteration); }

std::string snapshot_to_json(const SnapshotRecord& r) {
  const auto& g = r.graph;
  json kinds{{"node", json::object()}, {"edge", json::object()}};
  for (const auto& k : r.attrs.node_keys()) kinds["node"][k] = std::string(kind_name(*r.attrs.node_kind(k)));
  for (const auto& k : r.attrs.edge_keys()) kinds["edge"][k] = std::string(kind_name(*r.attrs.edge_kind(k)));

  json params = json::object();
  for (const auto& [k, v] : r.net_params)
    params[k] = json{{"kind", std::string(kind_name(kind_of(v)))}, {"value", typed_json(v)}};

  const auto node_keys = r.attrs.node_keys();
  json nodes = json::array();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    json node{{"id", v}};
    if (!r.states.empty()) node["type"] = r.states[v];
    json attrs = json::object();
    for (const auto& k : node_keys)
      if (const auto* val = r.attrs.node(v, k)) attrs[k] = typed_json(*val);
    node["attrs"] = std::move(attrs);
    nodes.push_back(std::move(node));
  }

  const auto edge_keys = r.attrs.edge_keys();
  json links = json::array();
  for (const auto& e : g.edges()) {
    json link{{"source", e.source}, {"target", e.target}};
    json attrs = json::object();
    json rev = json::object();
    for (const auto& k : edge_keys) {
      if (const auto* val = r.attrs.edge_exact(e, k)) attrs[k] = typed_json(*val);
      if (!g.directed())
        if (const auto* val = r.attrs.edge_exact({e.target, e.source}, k)) rev[k] = typed_json(*val);
    }
    link["attrs"] = std::move(attrs);
    if (!rev.empty()) link["reverse"] = std::move(rev);
    links.push_back(std::move(link));
  }

  json doc{{"iteration", r.iteration}, {"directed", g.directed()}, {"node_count", g.node_count()},
           {"attribute_kinds", kinds}, {"network_params", params}, {"nodes", nodes},
           {"links", links}};
  return doc.dump() + "\n";
}

SnapshotRecord snapshot_from_json(const std::string& text, const std::string& source) {
  try {
    return snapshot_from_json_impl(text, source);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
}

namespace {

SnapshotRecord snapshot_from_json_impl(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  SnapshotRecord r;
  r.iteration = member(doc, "iteration", source).get<long>();
  const bool directed = member(doc, "directed", source).get<bool>();
  const auto n = member(doc, "node_count", source).get<std::size_t>();
  r.graph = Graph(n, directed);
  r.attrs = AttributeTable(n);

  std::map<std::string, ValueKind> node_kinds, edge_kinds;
  const auto& kinds = member(doc, "attribute_kinds", source);
  for (const auto& [k, j] : member(kinds, "node", source).items()) {
    node_kinds[k] = kind_from(j, source);
    r.attrs.declare_node_key(k, node_kinds[k]);
  }
  for (const auto& [k, j] : member(kinds, "edge", source).items()) {
    edge_kinds[k] = kind_from(j, source);
    r.attrs.declare_edge_key(k, edge_kinds[k]);
  }
  for (const auto& [k, j] : member(doc, "network_params", source).items())
    r.net_params[k] = typed_from(member(j, "value", source), kind_from(member(j, "kind", source), source), source,
                                 "network parameter '" + k + "'");

  const auto& nodes = member(doc, "nodes", source);
  if (!nodes.is_array() || nodes.size() != n) throw ParseError(source, 0, "'nodes' must list node_count entries");
  bool typed = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = nodes[i];
    if (member(node, "id", source).get<std::size_t>() != i) throw ParseError(source, 0, "node ids must be 0..n-1 in order");
    if (node.contains("type")) {
      if (!typed) r.states.assign(n, std::string{});
      typed = true;
      r.states[i] = node["type"].get<std::string>();
    }
    for (const auto& [k, j] : member(node, "attrs", source).items()) {
      auto it = node_kinds.find(k);
      if (it == node_kinds.end()) throw ParseError(source, 0, "undeclared node attribute '" + k + "'");
      r.attrs.set_node(static_cast<NodeId>(i), k, typed_from(j, it->second, source, "node attribute '" + k + "'"));
    }
  }

  for (const auto& link : member(doc, "links", source)) {
    const auto s = member(link, "source", source).get<NodeId>();
    const auto t = member(link, "target", source).get<NodeId>();
    if (s >= n || t >= n) throw ParseError(source, 0, "link references a missing node");
    try {
      if (!r.graph.add_edge(s, t)) throw ParseError(source, 0, "duplicate link");
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, 0, e.what());
    }
    auto load = [&](const json& attrs, Edge e) {
      for (const auto& [k, j] : attrs.items()) {
        auto it = edge_kinds.find(k);
        if (it == edge_kinds.end()) throw ParseError(source, 0, "undeclared edge attribute '" + k + "'");
        r.attrs.set_edge(e, k, typed_from(j, it->second, source, "edge attribute '" + k + "'"));
      }
    };
    load(member(link, "attrs", source), Edge{s, t});
    if (link.contains("reverse")) load(link["reverse"], Edge{t, s});
  }
  return r;
}

}  // namespace

void write_snapshot(const SnapshotRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto stem = snapshot_file_stem(record.iteration);
  detail::spit(dir / (stem + ".json"), snapshot_to_json(record));
  write_gexf(record.graph, record.states, record.attrs, dir / (stem + ".gexf"));
}

SnapshotRecord read_snapshot(const std::filesystem::path& path) {
  return snapshot_from_json(detail::slurp(path), path.string());
}

std::vector<long> list_snapshots(const std::filesystem::path& run_dir) {
  std::vector<long> out;
  const auto dir = run_dir / "snapshots";
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!name.starts_with("iter_") || entry.path().extension() != ".json") continue;
    try {
      out.push_back(std::stol(name.substr(5)));
    } catch (const std::exception&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crowdkit::collect
