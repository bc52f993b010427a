#include "crowdkit/population.hpp"

#include <fstream>
#include <numeric>

#include "crowdkit/centrality.hpp"
#include "crowdkit/errors.hpp"
#include "crowdkit/generators.hpp"

namespace crowdkit::config {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

std::vector<NodeId> read_id_file(const std::filesystem::path& path, std::size_t n, const std::string& doc_path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(doc_path, "cannot open node id file " + path.string());
  std::vector<NodeId> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const auto token = line.substr(first, last - first + 1);
    unsigned long long id = 0;
    std::size_t used = 0;
    try {
      id = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-')
      throw ConfigError(doc_path, path.string() + ":" + std::to_string(lineno) + ": expected one node id per line");
    if (id >= n)
      throw ConfigError(doc_path, path.string() + ":" + std::to_string(lineno) + ": node " + token +
                                      " is not in the graph");
    ids.push_back(static_cast<NodeId>(id));
  }
  return ids;
}

AttributeValue draw_param(const ParamSpec& spec, Rng& rng) {
  if (const auto* n = std::get_if<NumericalParam>(&spec)) {
    if (n->low == n->high) return n->low;
    return rng.uniform(n->low, n->high);
  }
  const auto& c = std::get<CategoricalParam>(spec);
  if (c.weights.empty()) return c.options[rng.below(c.options.size())];
  const double u = rng.uniform();
  double acc = 0;
  for (std::size_t i = 0; i < c.options.size(); ++i) {
    acc += c.weights[i];
    if (u < acc) return c.options[i];
  }
  // rounding slack: last option with positive weight
  for (std::size_t i = c.options.size(); i-- > 0;)
    if (c.weights[i] > 0) return c.options[i];
  return c.options.back();
}

ValueKind param_kind(const ParamSpec& spec) {
  return std::holds_alternative<NumericalParam>(spec) ? ValueKind::number : ValueKind::category;
}

}  // namespace

Graph build_structure(const ProjectConfig& config, Rng& rng, const std::filesystem::path& base_dir) {
  if (const auto* r = std::get_if<RandomStructure>(&config.structure)) {
    switch (r->type) {
      case Generator::random_regular: return generate_random_regular(r->count, r->degree, rng);
      case Generator::barabasi_albert: return generate_barabasi_albert(r->count, r->m, rng);
      case Generator::erdos_renyi: return generate_erdos_renyi(r->count, r->p, rng);
    }
  }
  const auto& f = std::get<FileStructure>(config.structure);
  const auto path = resolve(base_dir, f.path);
  if (!std::filesystem::exists(path)) throw ConfigError("structure.file.path", "file not found: " + path.string());
  if (f.format == FileFormat::gexf) return load_gexf(path).graph;
  return load_edge_list(path, f.directed);
}

Population initialize_population(const ProjectConfig& config, const Graph& graph, Rng& rng,
                                 const std::filesystem::path& base_dir) {
  const auto& defs = config.definitions;
  const std::size_t n = graph.node_count();
  const std::string types_path = "definitions." + defs.model_key + ".nodetypes";
  Population pop;
  pop.states.assign(n, std::string{});
  pop.attrs = AttributeTable(n);
  std::vector<bool> assigned(n, false);

  for (const auto& [name, init] : defs.nodetypes) {
    const auto* m = std::get_if<ChooseWithMetric>(&init);
    if (!m) continue;
    for (NodeId v : top_k_by_metric(graph, m->metric, m->count)) {
      pop.states[v] = name;
      assigned[v] = true;
    }
  }

  for (const auto& [name, init] : defs.nodetypes) {
    const auto* f = std::get_if<FromFile>(&init);
    if (!f) continue;
    const auto doc_path = types_path + "." + name + ".from-file.path";
    for (NodeId v : read_id_file(resolve(base_dir, f->path), n, doc_path)) {
      if (assigned[v] && pop.states[v] == name) continue;
      if (assigned[v])
        throw ConfigError(doc_path, "node " + std::to_string(v) + " is already assigned to type '" + pop.states[v] + "'");
      pop.states[v] = name;
      assigned[v] = true;
    }
  }

  std::vector<NodeId> remaining;
  for (NodeId v = 0; v < n; ++v)
    if (!assigned[v]) remaining.push_back(v);

  std::size_t count_total = 0;
  bool any_weight = false;
  for (const auto& [_, init] : defs.nodetypes) {
    if (const auto* c = std::get_if<RandomWithCount>(&init)) count_total += c->count;
    any_weight = any_weight || std::holds_alternative<RandomWithWeight>(init);
  }
  if (count_total > remaining.size() || (!any_weight && count_total != remaining.size()))
    throw ConfigError(types_path, "random-with-count types request " + std::to_string(count_total) + " nodes but " +
                                      std::to_string(remaining.size()) + " remain to be assigned");

  if (count_total > 0) {
    std::vector<NodeId> order = remaining;
    rng.shuffle(std::span<NodeId>(order));
    std::size_t pos = 0;
    for (const auto& [name, init] : defs.nodetypes) {
      const auto* c = std::get_if<RandomWithCount>(&init);
      if (!c) continue;
      for (std::size_t i = 0; i < c->count; ++i, ++pos) {
        pop.states[order[pos]] = name;
        assigned[order[pos]] = true;
      }
    }
  }

  if (any_weight) {
    std::vector<std::pair<const std::string*, double>> weighted;
    for (const auto& [name, init] : defs.nodetypes)
      if (const auto* w = std::get_if<RandomWithWeight>(&init)) weighted.emplace_back(&name, w->weight);
    const std::string* fallback = nullptr;
    for (const auto& [name, w] : weighted)
      if (w > 0) fallback = name;
    if (!fallback) fallback = weighted.back().first;
    for (NodeId v : remaining) {
      if (assigned[v]) continue;
      const double u = rng.uniform();
      double acc = 0;
      const std::string* pick = fallback;
      for (const auto& [name, w] : weighted) {
        acc += w;
        if (u < acc) {
          pick = name;
          break;
        }
      }
      pop.states[v] = *pick;
      assigned[v] = true;
    }
  }

  // numerical keys first, then categorical, each in document order
  auto ordered_params = [](const Ordered<ParamSpec>& params) {
    std::vector<const std::pair<std::string, ParamSpec>*> out;
    for (const auto& p : params)
      if (std::holds_alternative<NumericalParam>(p.second)) out.push_back(&p);
    for (const auto& p : params)
      if (std::holds_alternative<CategoricalParam>(p.second)) out.push_back(&p);
    return out;
  };

  for (const auto* p : ordered_params(defs.node_parameters)) {
    pop.attrs.declare_node_key(p->first, param_kind(p->second));
    for (NodeId v = 0; v < n; ++v) pop.attrs.set_node(v, p->first, draw_param(p->second, rng));
  }
  const auto edges = graph.edges();
  for (const auto* p : ordered_params(defs.edge_parameters)) {
    pop.attrs.declare_edge_key(p->first, param_kind(p->second));
    for (const auto& e : edges) pop.attrs.set_edge(e, p->first, draw_param(p->second, rng));
  }

  for (const auto& [key, value] : defs.network_parameters) pop.net_params[key] = value;
  return pop;
}

}  // namespace crowdkit::config
