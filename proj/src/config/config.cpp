#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "crowdkit/config.hpp"
#include "crowdkit/errors.hpp"
#include "yaml_util.hpp"

namespace crowdkit::config {

std::optional<Generator> parse_generator(std::string_view name) noexcept {
  if (name == "random-regular") return Generator::random_regular;
  if (name == "barabasi-albert") return Generator::barabasi_albert;
  if (name == "erdos-renyi") return Generator::erdos_renyi;
  return std::nullopt;
}

std::string_view generator_name(Generator g) noexcept {
  switch (g) {
    case Generator::random_regular: return "random-regular";
    case Generator::barabasi_albert: return "barabasi-albert";
    case Generator::erdos_renyi: return "erdos-renyi";
  }
  return "unknown";
}

std::vector<std::string> ProjectConfig::type_names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : definitions.nodetypes) names.push_back(name);
  return names;
}

namespace detail {

std::string join_path(std::string_view base, std::string_view key) {
  if (base.empty()) return std::string(key);
  return std::string(base) + "." + std::string(key);
}

namespace {

template <class T>
bool parse_full(std::string_view text, T& out) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw ConfigError(path, message); }

void expect_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) fail(path, "expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
  expect_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail(join_path(path, key), "unknown key");
  }
}

YAML::Node require(const YAML::Node& parent, std::string_view key, const std::string& path) {
  auto child = parent[std::string(key)];
  if (!child) fail(join_path(path, key), "missing required key");
  return child;
}

std::string get_string(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a text value");
  return node.Scalar();
}

double get_real(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a number");
  double d = 0;
  if (!parse_full(node.Scalar(), d) || !std::isfinite(d)) fail(path, "expected a number, got '" + node.Scalar() + "'");
  return d;
}

std::size_t get_count(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a non-negative integer");
  long long v = 0;
  if (!parse_full(node.Scalar(), v) || v < 0)
    fail(path, "expected a non-negative integer, got '" + node.Scalar() + "'");
  return static_cast<std::size_t>(v);
}

bool get_bool(const YAML::Node& node, const std::string& path) {
  const auto s = get_string(node, path);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(path, "expected true or false");
}

StructureSpec parse_structure(const YAML::Node& node, const std::string& path) {
  check_keys(node, path, {"random", "file"});
  if (node.size() != 1) fail(path, "exactly one of 'random' or 'file' is required");
  if (auto r = node["random"]) {
    const auto rp = join_path(path, "random");
    RandomStructure out;
    out.count = get_count(require(r, "count", rp), join_path(rp, "count"));
    const auto type_text = get_string(require(r, "type", rp), join_path(rp, "type"));
    auto gen = parse_generator(type_text);
    if (!gen) fail(join_path(rp, "type"), "unknown generator '" + type_text + "'");
    out.type = *gen;
    switch (out.type) {
      case Generator::random_regular:
        check_keys(r, rp, {"count", "type", "degree"});
        out.degree = get_count(require(r, "degree", rp), join_path(rp, "degree"));
        break;
      case Generator::barabasi_albert:
        check_keys(r, rp, {"count", "type", "m"});
        out.m = get_count(require(r, "m", rp), join_path(rp, "m"));
        break;
      case Generator::erdos_renyi:
        check_keys(r, rp, {"count", "type", "p"});
        out.p = get_real(require(r, "p", rp), join_path(rp, "p"));
        break;
    }
    return out;
  }
  const auto fp = join_path(path, "file");
  const auto f = node["file"];
  check_keys(f, fp, {"path", "format", "directed"});
  FileStructure out;
  out.path = get_string(require(f, "path", fp), join_path(fp, "path"));
  if (auto fmt = f["format"]) {
    const auto s = get_string(fmt, join_path(fp, "format"));
    if (s == "edgelist")
      out.format = FileFormat::edgelist;
    else if (s == "gexf")
      out.format = FileFormat::gexf;
    else
      fail(join_path(fp, "format"), "unknown file format '" + s + "'");
  }
  if (auto d = f["directed"]) out.directed = get_bool(d, join_path(fp, "directed"));
  return out;
}

NodeTypeInit parse_nodetype(const YAML::Node& node, const std::string& path) {
  check_keys(node, path, {"random-with-weight", "random-with-count", "choose_with_metric", "from-file"});
  if (node.size() != 1) fail(path, "exactly one initialization method is required");
  if (auto w = node["random-with-weight"]) {
    const auto p = join_path(path, "random-with-weight");
    check_keys(w, p, {"initial-weight"});
    return RandomWithWeight{get_real(require(w, "initial-weight", p), join_path(p, "initial-weight"))};
  }
  if (auto c = node["random-with-count"]) {
    const auto p = join_path(path, "random-with-count");
    check_keys(c, p, {"count"});
    return RandomWithCount{get_count(require(c, "count", p), join_path(p, "count"))};
  }
  if (auto m = node["choose_with_metric"]) {
    const auto p = join_path(path, "choose_with_metric");
    check_keys(m, p, {"metric", "count"});
    const auto name = get_string(require(m, "metric", p), join_path(p, "metric"));
    auto metric = parse_metric(name);
    if (!metric) fail(join_path(p, "metric"), "unknown metric '" + name + "'");
    return ChooseWithMetric{*metric, get_count(require(m, "count", p), join_path(p, "count"))};
  }
  const auto p = join_path(path, "from-file");
  const auto f = node["from-file"];
  check_keys(f, p, {"path"});
  return FromFile{get_string(require(f, "path", p), join_path(p, "path"))};
}

Ordered<ParamSpec> parse_params(const YAML::Node& node, const std::string& path) {
  check_keys(node, path, {"numerical", "categorical"});
  Ordered<ParamSpec> out;
  if (auto num = node["numerical"]) {
    const auto np = join_path(path, "numerical");
    expect_map(num, np);
    for (const auto& kv : num) {
      const auto key = kv.first.as<std::string>();
      const auto kp = join_path(np, key);
      if (!kv.second.IsSequence() || kv.second.size() != 2) fail(kp, "expected [low, high]");
      out.emplace_back(key, NumericalParam{get_real(kv.second[0], kp + "[0]"), get_real(kv.second[1], kp + "[1]")});
    }
  }
  if (auto cat = node["categorical"]) {
    const auto cp = join_path(path, "categorical");
    expect_map(cat, cp);
    for (const auto& kv : cat) {
      const auto key = kv.first.as<std::string>();
      const auto kp = join_path(cp, key);
      CategoricalParam param;
      YAML::Node options = kv.second;
      if (kv.second.IsMap()) {
        check_keys(kv.second, kp, {"options", "weights"});
        options = require(kv.second, "options", kp);
        if (auto w = kv.second["weights"]) {
          if (!w.IsSequence()) fail(join_path(kp, "weights"), "expected a list of probabilities");
          for (std::size_t i = 0; i < w.size(); ++i)
            param.weights.push_back(get_real(w[i], join_path(kp, "weights") + "[" + std::to_string(i) + "]"));
        }
      }
      if (!options.IsSequence()) fail(kp, "expected a list of options");
      for (std::size_t i = 0; i < options.size(); ++i)
        param.options.push_back(get_string(options[i], kp + "[" + std::to_string(i) + "]"));
      out.emplace_back(key, std::move(param));
    }
  }
  return out;
}

CompartmentSpec parse_compartment(const YAML::Node& node, const std::string& path) {
  expect_map(node, path);
  const auto type = get_string(require(node, "type", path), join_path(path, "type"));
  if (type == "node-stochastic") {
    check_keys(node, path, {"type", "ratio", "triggering_status"});
    NodeStochasticSpec spec;
    spec.ratio = get_real(require(node, "ratio", path), join_path(path, "ratio"));
    if (auto t = node["triggering_status"]) spec.triggering_status = get_string(t, join_path(path, "triggering_status"));
    return spec;
  }
  if (type == "count-down") {
    check_keys(node, path, {"type", "name", "iteration-count"});
    return CountDownSpec{get_string(require(node, "name", path), join_path(path, "name")),
                         get_count(require(node, "iteration-count", path), join_path(path, "iteration-count"))};
  }
  if (type == "node-categorical") {
    check_keys(node, path, {"type", "attribute", "value", "probability"});
    return NodeCategoricalSpec{get_string(require(node, "attribute", path), join_path(path, "attribute")),
                               get_string(require(node, "value", path), join_path(path, "value")),
                               get_real(require(node, "probability", path), join_path(path, "probability"))};
  }
  fail(join_path(path, "type"), "unknown compartment type '" + type + "'");
}

DefinitionsSpec parse_definitions(const YAML::Node& node, const std::string& path) {
  expect_map(node, path);
  if (node.size() != 1) fail(path, "expected exactly one model block (e.g. 'pd-model')");
  DefinitionsSpec out;
  const auto block_it = node.begin();
  out.model_key = block_it->first.as<std::string>();
  const auto bp = join_path(path, out.model_key);
  const YAML::Node block = block_it->second;
  check_keys(block, bp,
             {"name", "nodetypes", "node-parameters", "edge-parameters", "compartments", "rules", "network-parameters"});

  const auto kind = get_string(require(block, "name", bp), join_path(bp, "name"));
  if (kind == "diffusion")
    out.model_kind = ModelKind::diffusion;
  else if (kind == "custom")
    out.model_kind = ModelKind::custom;
  else
    fail(join_path(bp, "name"), "unknown model kind '" + kind + "' (expected diffusion or custom)");

  const auto tp = join_path(bp, "nodetypes");
  const auto types = require(block, "nodetypes", bp);
  expect_map(types, tp);
  for (const auto& kv : types) {
    const auto name = kv.first.as<std::string>();
    out.nodetypes.emplace_back(name, parse_nodetype(kv.second, join_path(tp, name)));
  }
  if (auto p = block["node-parameters"]) out.node_parameters = parse_params(p, join_path(bp, "node-parameters"));
  if (auto p = block["edge-parameters"]) out.edge_parameters = parse_params(p, join_path(bp, "edge-parameters"));
  if (auto comps = block["compartments"]) {
    const auto cp = join_path(bp, "compartments");
    expect_map(comps, cp);
    for (const auto& kv : comps) {
      const auto id = kv.first.as<std::string>();
      out.compartments.emplace_back(id, parse_compartment(kv.second, join_path(cp, id)));
    }
  }
  if (auto rules = block["rules"]) {
    const auto rp = join_path(bp, "rules");
    expect_map(rules, rp);
    for (const auto& kv : rules) {
      const auto id = kv.first.as<std::string>();
      const auto p = join_path(rp, id);
      if (!kv.second.IsSequence() || kv.second.size() != 3) fail(p, "expected [from_type, to_type, compartment]");
      out.rules.emplace_back(id, RuleSpec{get_string(kv.second[0], p + "[0]"), get_string(kv.second[1], p + "[1]"),
                                          get_string(kv.second[2], p + "[2]")});
    }
  }
  if (auto params = block["network-parameters"]) {
    const auto np = join_path(bp, "network-parameters");
    expect_map(params, np);
    for (const auto& kv : params) {
      const auto key = kv.first.as<std::string>();
      out.network_parameters.emplace_back(key, scalar_value(kv.second, join_path(np, key)));
    }
  }
  return out;
}

void emit_params(YAML::Emitter& out, const Ordered<ParamSpec>& params) {
  out << YAML::BeginMap;
  bool any_num = false, any_cat = false;
  for (const auto& [_, p] : params) (std::holds_alternative<NumericalParam>(p) ? any_num : any_cat) = true;
  if (any_num) {
    out << YAML::Key << "numerical" << YAML::Value << YAML::BeginMap;
    for (const auto& [key, p] : params)
      if (const auto* n = std::get_if<NumericalParam>(&p))
        out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << format_real(n->low)
            << format_real(n->high) << YAML::EndSeq;
    out << YAML::EndMap;
  }
  if (any_cat) {
    out << YAML::Key << "categorical" << YAML::Value << YAML::BeginMap;
    for (const auto& [key, p] : params) {
      const auto* c = std::get_if<CategoricalParam>(&p);
      if (!c) continue;
      out << YAML::Key << key << YAML::Value;
      if (c->weights.empty()) {
        out << YAML::Flow << YAML::BeginSeq;
        for (const auto& o : c->options) out << YAML::DoubleQuoted << o;
        out << YAML::EndSeq;
      } else {
        out << YAML::BeginMap << YAML::Key << "options" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& o : c->options) out << YAML::DoubleQuoted << o;
        out << YAML::EndSeq << YAML::Key << "weights" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double w : c->weights) out << format_real(w);
        out << YAML::EndSeq << YAML::EndMap;
      }
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
}

}  // namespace

std::string format_real(double d) {
  std::string s = to_text(AttributeValue{d});
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

AttributeValue scalar_value(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a scalar value");
  const auto& text = node.Scalar();
  if (node.Tag() == "!") return text;
  std::int64_t i = 0;
  if (parse_full(text, i)) return i;
  double d = 0;
  if (parse_full(text, d)) return d;
  return text;
}

void emit_value(YAML::Emitter& out, const AttributeValue& value) {
  switch (kind_of(value)) {
    case ValueKind::category: out << YAML::DoubleQuoted << std::get<std::string>(value); break;
    case ValueKind::number: out << format_real(std::get<double>(value)); break;
    case ValueKind::integer: out << to_text(value); break;
  }
}

ProjectConfig from_yaml(const YAML::Node& root) {
  if (!root || root.IsNull()) fail("", "empty configuration document");
  check_keys(root, "", {"name", "structure", "definitions", "sweep"});
  ProjectConfig config;
  config.name = get_string(require(root, "name", ""), "name");
  config.structure = parse_structure(require(root, "structure", ""), "structure");
  config.definitions = parse_definitions(require(root, "definitions", ""), "definitions");
  if (auto sweep = root["sweep"]) {
    expect_map(sweep, "sweep");
    SweepSpec spec;
    for (const auto& kv : sweep) {
      const auto key = kv.first.as<std::string>();
      const auto p = join_path("sweep", key);
      if (!kv.second.IsSequence()) fail(p, "expected a list of values");
      std::vector<AttributeValue> values;
      for (std::size_t i = 0; i < kv.second.size(); ++i)
        values.push_back(scalar_value(kv.second[i], p + "[" + std::to_string(i) + "]"));
      spec.emplace_back(key, std::move(values));
    }
    config.sweep = std::move(spec);
  }
  return config;
}

YAML::Node to_yaml(const ProjectConfig& config) { return YAML::Load(serialize_config(config)); }

}  // namespace detail

ProjectConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", "YAML syntax error at line " + std::to_string(e.mark.line + 1) + ", column " +
                              std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  return detail::from_yaml(root);
}

ProjectConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open configuration file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ProjectConfig& config) {
  using detail::emit_value;
  using detail::format_real;
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << config.name;

  out << YAML::Key << "structure" << YAML::Value << YAML::BeginMap;
  if (const auto* r = std::get_if<RandomStructure>(&config.structure)) {
    out << YAML::Key << "random" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "count" << YAML::Value << r->count;
    out << YAML::Key << "type" << YAML::Value << std::string(generator_name(r->type));
    switch (r->type) {
      case Generator::random_regular: out << YAML::Key << "degree" << YAML::Value << r->degree; break;
      case Generator::barabasi_albert: out << YAML::Key << "m" << YAML::Value << r->m; break;
      case Generator::erdos_renyi: out << YAML::Key << "p" << YAML::Value << format_real(r->p); break;
    }
    out << YAML::EndMap;
  } else {
    const auto& f = std::get<FileStructure>(config.structure);
    out << YAML::Key << "file" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "path" << YAML::Value << YAML::DoubleQuoted << f.path;
    out << YAML::Key << "format" << YAML::Value << (f.format == FileFormat::gexf ? "gexf" : "edgelist");
    out << YAML::Key << "directed" << YAML::Value << (f.directed ? "true" : "false");
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  const auto& d = config.definitions;
  out << YAML::Key << "definitions" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << d.model_key << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << (d.model_kind == ModelKind::diffusion ? "diffusion" : "custom");

  out << YAML::Key << "nodetypes" << YAML::Value << YAML::BeginMap;
  for (const auto& [name, init] : d.nodetypes) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, RandomWithWeight>) {
            out << YAML::Key << "random-with-weight" << YAML::Value << YAML::BeginMap << YAML::Key << "initial-weight"
                << YAML::Value << format_real(v.weight) << YAML::EndMap;
          } else if constexpr (std::is_same_v<T, RandomWithCount>) {
            out << YAML::Key << "random-with-count" << YAML::Value << YAML::BeginMap << YAML::Key << "count"
                << YAML::Value << v.count << YAML::EndMap;
          } else if constexpr (std::is_same_v<T, ChooseWithMetric>) {
            out << YAML::Key << "choose_with_metric" << YAML::Value << YAML::BeginMap << YAML::Key << "metric"
                << YAML::Value << std::string(metric_name(v.metric)) << YAML::Key << "count" << YAML::Value << v.count
                << YAML::EndMap;
          } else {
            out << YAML::Key << "from-file" << YAML::Value << YAML::BeginMap << YAML::Key << "path" << YAML::Value
                << YAML::DoubleQuoted << v.path << YAML::EndMap;
          }
        },
        init);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  if (!d.node_parameters.empty()) {
    out << YAML::Key << "node-parameters" << YAML::Value;
    detail::emit_params(out, d.node_parameters);
  }
  if (!d.edge_parameters.empty()) {
    out << YAML::Key << "edge-parameters" << YAML::Value;
    detail::emit_params(out, d.edge_parameters);
  }
  if (!d.compartments.empty()) {
    out << YAML::Key << "compartments" << YAML::Value << YAML::BeginMap;
    for (const auto& [id, comp] : d.compartments) {
      out << YAML::Key << id << YAML::Value << YAML::BeginMap;
      if (const auto* s = std::get_if<NodeStochasticSpec>(&comp)) {
        out << YAML::Key << "type" << YAML::Value << "node-stochastic";
        out << YAML::Key << "ratio" << YAML::Value << format_real(s->ratio);
        if (s->triggering_status)
          out << YAML::Key << "triggering_status" << YAML::Value << YAML::DoubleQuoted << *s->triggering_status;
      } else if (const auto* c = std::get_if<CountDownSpec>(&comp)) {
        out << YAML::Key << "type" << YAML::Value << "count-down";
        out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << c->name;
        out << YAML::Key << "iteration-count" << YAML::Value << c->iteration_count;
      } else {
        const auto& n = std::get<NodeCategoricalSpec>(comp);
        out << YAML::Key << "type" << YAML::Value << "node-categorical";
        out << YAML::Key << "attribute" << YAML::Value << YAML::DoubleQuoted << n.attribute;
        out << YAML::Key << "probability" << YAML::Value << format_real(n.probability);
        out << YAML::Key << "value" << YAML::Value << YAML::DoubleQuoted << n.value;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  if (!d.rules.empty()) {
    out << YAML::Key << "rules" << YAML::Value << YAML::BeginMap;
    for (const auto& [id, rule] : d.rules)
      out << YAML::Key << id << YAML::Value << YAML::Flow << YAML::BeginSeq << YAML::DoubleQuoted << rule.from_type
          << YAML::DoubleQuoted << rule.to_type << YAML::DoubleQuoted << rule.compartment << YAML::EndSeq;
    out << YAML::EndMap;
  }
  if (!d.network_parameters.empty()) {
    out << YAML::Key << "network-parameters" << YAML::Value << YAML::BeginMap;
    for (const auto& [key, value] : d.network_parameters) {
      out << YAML::Key << key << YAML::Value;
      emit_value(out, value);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap << YAML::EndMap;

  if (config.sweep) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    for (const auto& [path, values] : *config.sweep) {
      out << YAML::Key << path << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (const auto& v : values) emit_value(out, v);
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::optional<std::size_t> structure_node_count(const ProjectConfig& config) {
  if (const auto* r = std::get_if<RandomStructure>(&config.structure)) return r->count;
  return std::nullopt;
}

std::vector<std::string> validate(const ProjectConfig& config, std::optional<std::size_t> n_hint) {
  std::vector<std::string> v;
  auto add = [&](const std::string& path, const std::string& msg) { v.push_back(path + ": " + msg); };
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };

  if (config.name.empty()) add("name", "must be non-empty");

  if (const auto* r = std::get_if<RandomStructure>(&config.structure)) {
    n_hint = r->count;
    switch (r->type) {
      case Generator::random_regular:
        if ((r->count * r->degree) % 2 != 0) add("structure.random", "count * degree must be even");
        if (r->degree >= r->count && r->count > 0) add("structure.random.degree", "must be smaller than count");
        break;
      case Generator::barabasi_albert:
        if (r->m < 1 || r->m >= r->count) add("structure.random.m", "requires 1 <= m < count");
        break;
      case Generator::erdos_renyi:
        if (!prob_ok(r->p)) add("structure.random.p", "must lie in [0, 1]");
        break;
    }
  } else if (std::get<FileStructure>(config.structure).path.empty()) {
    add("structure.file.path", "must be non-empty");
  }

  const auto& d = config.definitions;
  const std::string bp = "definitions." + d.model_key;
  std::set<std::string> types;
  if (d.nodetypes.empty()) add(bp + ".nodetypes", "at least one node type is required");
  double weight_sum = 0;
  std::size_t fixed = 0;
  bool any_weight = false, any_file = false;
  int metric_types = 0;
  for (const auto& [name, init] : d.nodetypes) {
    const std::string p = bp + ".nodetypes." + name;
    if (name.empty()) add(p, "node type name must be non-empty");
    if (!types.insert(name).second) add(p, "duplicate node type name");
    if (const auto* w = std::get_if<RandomWithWeight>(&init)) {
      any_weight = true;
      weight_sum += w->weight;
      if (!prob_ok(w->weight)) add(p, "initial-weight must lie in [0, 1]");
    } else if (const auto* c = std::get_if<RandomWithCount>(&init)) {
      fixed += c->count;
    } else if (const auto* m = std::get_if<ChooseWithMetric>(&init)) {
      ++metric_types;
      fixed += m->count;
      if (m->count == 0) add(p, "choose_with_metric count must be at least 1");
      if (n_hint && m->count > *n_hint) add(p, "choose_with_metric count exceeds the node count");
    } else {
      any_file = true;
      if (std::get<FromFile>(init).path.empty()) add(p, "from-file path must be non-empty");
    }
  }
  if (metric_types > 1) add(bp + ".nodetypes", "choose_with_metric may appear on at most one node type");
  if (any_weight && std::abs(weight_sum - 1.0) > 1e-6)
    add(bp + ".nodetypes", "weights must sum to 1 (got " + to_text(AttributeValue{weight_sum}) + ")");
  if (n_hint) {
    if (!any_weight && !any_file && fixed != *n_hint)
      add(bp + ".nodetypes", "counts must sum to the node count " + std::to_string(*n_hint) + " (got " +
                                 std::to_string(fixed) + ")");
    if ((any_weight || any_file) && fixed > *n_hint)
      add(bp + ".nodetypes", "counts exceed the node count " + std::to_string(*n_hint));
  }

  auto check_params = [&](const Ordered<ParamSpec>& params, const std::string& p) {
    std::set<std::string> keys;
    for (const auto& [key, spec] : params) {
      const std::string kp = p + "." + key;
      if (key.empty()) add(kp, "key must be non-empty");
      if (!keys.insert(key).second) add(kp, "duplicate parameter key");
      if (const auto* n = std::get_if<NumericalParam>(&spec)) {
        if (n->low > n->high) add(kp, "low must not exceed high");
      } else {
        const auto& c = std::get<CategoricalParam>(spec);
        if (c.options.empty()) add(kp, "options must be non-empty");
        if (!c.weights.empty()) {
          if (c.weights.size() != c.options.size()) add(kp, "weights must match options in length");
          double s = 0;
          for (double w : c.weights) {
            s += w;
            if (!prob_ok(w)) add(kp, "weights must lie in [0, 1]");
          }
          if (std::abs(s - 1.0) > 1e-6) add(kp, "weights must sum to 1");
        }
      }
    }
  };
  check_params(d.node_parameters, bp + ".node-parameters");
  check_params(d.edge_parameters, bp + ".edge-parameters");

  if (d.model_kind == ModelKind::custom && (!d.rules.empty() || !d.compartments.empty()))
    add(bp, "compartments and rules require the diffusion model");

  std::set<std::string> comp_ids;
  for (const auto& [id, comp] : d.compartments) {
    const std::string p = bp + ".compartments." + id;
    comp_ids.insert(id);
    if (const auto* s = std::get_if<NodeStochasticSpec>(&comp)) {
      if (!prob_ok(s->ratio)) add(p, "ratio must lie in [0, 1]");
      if (s->triggering_status && !types.contains(*s->triggering_status))
        add(p, "triggering_status '" + *s->triggering_status + "' is not a declared node type");
    } else if (const auto* c = std::get_if<CountDownSpec>(&comp)) {
      if (c->iteration_count < 1) add(p, "iteration-count must be at least 1");
      if (c->name.empty()) add(p, "name must be non-empty");
    } else {
      const auto& n = std::get<NodeCategoricalSpec>(comp);
      if (!prob_ok(n.probability)) add(p, "probability must lie in [0, 1]");
      if (n.attribute.empty()) add(p, "attribute must be non-empty");
    }
  }
  for (const auto& [id, rule] : d.rules) {
    const std::string p = bp + ".rules." + id;
    if (!types.contains(rule.from_type)) add(p, "unknown from-type '" + rule.from_type + "'");
    if (!types.contains(rule.to_type)) add(p, "unknown to-type '" + rule.to_type + "'");
    if (rule.from_type == rule.to_type) add(p, "from-type and to-type must differ");
    if (!comp_ids.contains(rule.compartment)) add(p, "dangling reference to compartment '" + rule.compartment + "'");
  }

  if (config.sweep) {
    const auto tree = detail::to_yaml(config);
    for (const auto& [path, values] : *config.sweep) {
      if (values.empty()) add("sweep." + path, "value list must be non-empty");
      if (path.starts_with("sweep")) add("sweep." + path, "cannot sweep the sweep section");
      else if (!detail::resolve_path(tree, path)) add("sweep." + path, "path does not resolve into the configuration");
    }
  }
  return v;
}

}  // namespace crowdkit::config
