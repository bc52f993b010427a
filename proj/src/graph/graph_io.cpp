#include "crowdkit/graph_io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "crowdkit/errors.hpp"

namespace crowdkit {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in, bool directed, const std::string& source) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  std::unordered_set<Edge, EdgeHash> seen;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(ids.size()));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2)
      throw ParseError(source, line_no, "expected two node ids, found " + std::to_string(tokens.size()) + " fields");
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    if (u == v) continue;
    Edge key = directed || u < v ? Edge{u, v} : Edge{v, u};
    if (seen.insert(key).second) edges.push_back({u, v});
  }
  if (in.bad()) throw ParseError(source, line_no, "read error");

  Graph g(ids.size(), directed);
  for (const auto& e : edges) g.add_edge(e.source, e.target);
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, bool directed) {
  auto in = open_in(path);
  return read_edge_list(in, directed, path.string());
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  for (const auto& e : graph.edges()) out << e.source << ' ' << e.target << '\n';
}

// ---------------------------------------------------------------------------
// GEXF

namespace {

constexpr std::string_view kTypeKey = "node_type";
constexpr std::string_view kReverseSuffix = "@rev";

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view gexf_type(ValueKind kind) {
  switch (kind) {
    case ValueKind::number: return "double";
    case ValueKind::category: return "string";
    case ValueKind::integer: return "long";
  }
  return "string";
}

std::optional<ValueKind> kind_from_gexf(std::string_view type) {
  if (type == "double" || type == "float") return ValueKind::number;
  if (type == "string") return ValueKind::category;
  if (type == "long" || type == "integer") return ValueKind::integer;
  return std::nullopt;
}

struct EdgeColumnOut {
  std::string id;
  std::string key;
  bool reverse;
};

}  // namespace

void write_gexf(const Graph& graph, const NodeLabels& states, const AttributeTable& attrs, std::ostream& out) {
  const bool undirected = !graph.directed();
  const bool with_types = states.size() == graph.node_count() && graph.node_count() > 0;
  const auto node_keys = attrs.node_keys();
  const auto edge_keys = attrs.edge_keys();

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.2\" version=\"1.2\">\n"
      << "  <graph mode=\"static\" defaultedgetype=\"" << (undirected ? "undirected" : "directed") << "\">\n";

  std::vector<std::pair<std::string, std::string>> node_cols;  // id, key
  out << "    <attributes class=\"node\">\n";
  if (with_types) {
    node_cols.emplace_back("0", std::string(kTypeKey));
    out << "      <attribute id=\"0\" title=\"" << kTypeKey << "\" type=\"string\"/>\n";
  }
  for (const auto& key : node_keys) {
    std::string id = std::to_string(node_cols.size());
    out << "      <attribute id=\"" << id << "\" title=\"" << xml_escape(key) << "\" type=\""
        << gexf_type(*attrs.node_kind(key)) << "\"/>\n";
    node_cols.emplace_back(id, key);
  }
  out << "    </attributes>\n";

  std::vector<EdgeColumnOut> edge_cols;
  out << "    <attributes class=\"edge\">\n";
  for (const auto& key : edge_keys) {
    const auto kind = gexf_type(*attrs.edge_kind(key));
    std::string id = std::to_string(edge_cols.size());
    out << "      <attribute id=\"" << id << "\" title=\"" << xml_escape(key) << "\" type=\"" << kind << "\"/>\n";
    edge_cols.push_back({id, key, false});
    if (undirected) {
      bool any_reverse = false;
      for (const auto& [e, _] : attrs.edge_values(key))
        if (e.source > e.target) {
          any_reverse = true;
          break;
        }
      if (any_reverse) {
        id = std::to_string(edge_cols.size());
        out << "      <attribute id=\"" << id << "\" title=\"" << xml_escape(key) << kReverseSuffix
            << "\" type=\"" << kind << "\"/>\n";
        edge_cols.push_back({id, key, true});
      }
    }
  }
  out << "    </attributes>\n";

  out << "    <nodes>\n";
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    out << "      <node id=\"" << v << "\" label=\"" << v << "\"";
    std::ostringstream values;
    for (const auto& [id, key] : node_cols) {
      if (with_types && key == kTypeKey && id == "0") {
        values << "          <attvalue for=\"0\" value=\"" << xml_escape(states[v]) << "\"/>\n";
      } else if (const auto* value = attrs.node(v, key)) {
        values << "          <attvalue for=\"" << id << "\" value=\"" << xml_escape(to_text(*value)) << "\"/>\n";
      }
    }
    const auto body = values.str();
    if (body.empty()) {
      out << "/>\n";
    } else {
      out << ">\n        <attvalues>\n" << body << "        </attvalues>\n      </node>\n";
    }
  }
  out << "    </nodes>\n";

  out << "    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& e : graph.edges()) {
    out << "      <edge id=\"" << edge_id++ << "\" source=\"" << e.source << "\" target=\"" << e.target << "\"";
    std::ostringstream values;
    for (const auto& col : edge_cols) {
      Edge key = col.reverse ? Edge{e.target, e.source} : e;
      if (const auto* value = attrs.edge_exact(key, col.key))
        values << "          <attvalue for=\"" << col.id << "\" value=\"" << xml_escape(to_text(*value)) << "\"/>\n";
    }
    const auto body = values.str();
    if (body.empty()) {
      out << "/>\n";
    } else {
      out << ">\n        <attvalues>\n" << body << "        </attvalues>\n      </edge>\n";
    }
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void write_gexf(const Graph& graph, const NodeLabels& states, const AttributeTable& attrs,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  write_gexf(graph, states, attrs, out);
  if (!out) throw ParseError(path.string(), 0, "write failed");
}

namespace {

namespace pt = boost::property_tree;

struct Column {
  std::string key;
  ValueKind kind;
  bool reverse = false;
  bool is_type = false;
};

AttributeValue parse_value(std::string_view text, ValueKind kind, const std::string& source) {
  switch (kind) {
    case ValueKind::category: return std::string(text);
    case ValueKind::number: {
      double d = 0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), d);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParseError(source, 0, "invalid double attribute value '" + std::string(text) + "'");
      return d;
    }
    case ValueKind::integer: {
      std::int64_t i = 0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), i);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParseError(source, 0, "invalid integer attribute value '" + std::string(text) + "'");
      return i;
    }
  }
  return std::string(text);
}

GexfDocument read_gexf_impl(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(source, e.line(), "malformed XML: " + e.message());
  }
  const auto* root = tree.get_child_optional("gexf").get_ptr();
  if (!root) throw ParseError(source, 0, "missing <gexf> root element");
  const auto* graph_el = root->get_child_optional("graph").get_ptr();
  if (!graph_el) throw ParseError(source, 0, "missing <graph> element");

  const auto edge_type = graph_el->get<std::string>("<xmlattr>.defaultedgetype", "undirected");
  if (edge_type != "undirected" && edge_type != "directed")
    throw ParseError(source, 0, "unsupported defaultedgetype '" + edge_type + "'");
  const bool directed = edge_type == "directed";

  std::map<std::string, Column> node_columns, edge_columns;
  for (const auto& [tag, child] : *graph_el) {
    if (tag != "attributes") continue;
    const auto cls = child.get<std::string>("<xmlattr>.class", "node");
    auto& target = cls == "edge" ? edge_columns : node_columns;
    for (const auto& [atag, attr] : child) {
      if (atag != "attribute") continue;
      const auto id = attr.get<std::string>("<xmlattr>.id");
      const auto title = attr.get<std::string>("<xmlattr>.title", id);
      const auto type = attr.get<std::string>("<xmlattr>.type", "string");
      auto kind = kind_from_gexf(type);
      if (!kind) throw ParseError(source, 0, "unknown attribute kind '" + type + "' for '" + title + "'");
      Column col{title, *kind};
      if (cls == "edge" && !directed && title.size() > kReverseSuffix.size() &&
          title.ends_with(kReverseSuffix)) {
        col.key = title.substr(0, title.size() - kReverseSuffix.size());
        col.reverse = true;
      }
      if (cls != "edge" && title == kTypeKey) col.is_type = true;
      target.emplace(id, std::move(col));
    }
  }

  std::unordered_map<std::string, NodeId> ids;
  std::vector<const pt::ptree*> node_elements;
  if (const auto* nodes = graph_el->get_child_optional("nodes").get_ptr()) {
    for (const auto& [tag, node] : *nodes) {
      if (tag != "node") continue;
      const auto id = node.get<std::string>("<xmlattr>.id");
      if (!ids.emplace(id, static_cast<NodeId>(ids.size())).second)
        throw ParseError(source, 0, "duplicate node id '" + id + "'");
      node_elements.push_back(&node);
    }
  }

  GexfDocument doc{Graph(ids.size(), directed), {}, AttributeTable(ids.size())};
  bool any_type = false;
  for (const auto& [_, col] : node_columns) {
    if (col.is_type)
      any_type = true;
    else
      doc.attrs.declare_node_key(col.key, col.kind);
  }
  for (const auto& [_, col] : edge_columns) doc.attrs.declare_edge_key(col.key, col.kind);
  if (any_type) doc.states.assign(ids.size(), std::string{});

  auto read_attvalues = [&](const pt::ptree& element, const std::map<std::string, Column>& columns, auto&& store) {
    const auto* values = element.get_child_optional("attvalues").get_ptr();
    if (!values) return;
    for (const auto& [tag, av] : *values) {
      if (tag != "attvalue") continue;
      const auto ref = av.template get<std::string>("<xmlattr>.for");
      auto it = columns.find(ref);
      if (it == columns.end()) throw ParseError(source, 0, "attvalue references undeclared attribute '" + ref + "'");
      store(it->second, av.template get<std::string>("<xmlattr>.value", ""));
    }
  };

  for (NodeId v = 0; v < node_elements.size(); ++v) {
    read_attvalues(*node_elements[v], node_columns, [&](const Column& col, const std::string& text) {
      if (col.is_type)
        doc.states[v] = text;
      else
        doc.attrs.set_node(v, col.key, parse_value(text, col.kind, source));
    });
  }

  if (const auto* edges = graph_el->get_child_optional("edges").get_ptr()) {
    for (const auto& [tag, edge] : *edges) {
      if (tag != "edge") continue;
      const auto s = edge.get<std::string>("<xmlattr>.source");
      const auto t = edge.get<std::string>("<xmlattr>.target");
      auto si = ids.find(s), ti = ids.find(t);
      if (si == ids.end() || ti == ids.end())
        throw ParseError(source, 0, "edge references missing node '" + (si == ids.end() ? s : t) + "'");
      if (si->second == ti->second) throw ParseError(source, 0, "self-loop on node '" + s + "'");
      if (!doc.graph.add_edge(si->second, ti->second))
        throw ParseError(source, 0, "duplicate edge " + s + " -> " + t);
      const Edge e{si->second, ti->second};
      read_attvalues(edge, edge_columns, [&](const Column& col, const std::string& text) {
        doc.attrs.set_edge(col.reverse ? Edge{e.target, e.source} : e, col.key, parse_value(text, col.kind, source));
      });
    }
  }
  return doc;
}

}  // namespace

GexfDocument read_gexf(std::istream& in, const std::string& source) {
  try {
    return read_gexf_impl(in, source);
  } catch (const pt::ptree_error& e) {
    throw ParseError(source, 0, std::string("malformed GEXF: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, e.what());
  }
}

GexfDocument load_gexf(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_gexf(in, path.string());
}

}  // namespace crowdkit
