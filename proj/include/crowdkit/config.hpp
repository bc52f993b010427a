#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "crowdkit/attributes.hpp"
#include "crowdkit/centrality.hpp"

namespace crowdkit::config {

// Insertion-ordered map; YAML declaration order is significant for node types,
// rules and sweeps.
template <class V>
using Ordered = std::vector<std::pair<std::string, V>>;

template <class V>
const V* find(const Ordered<V>& map, std::string_view key) {
  for (const auto& [k, v] : map)
    if (k == key) return &v;
  return nullptr;
}

// ---- structure ------------------------------------------------------------

enum class Generator { random_regular, barabasi_albert, erdos_renyi };

std::optional<Generator> parse_generator(std::string_view name) noexcept;
std::string_view generator_name(Generator g) noexcept;

struct RandomStructure {
  std::size_t count = 0;
  Generator type = Generator::random_regular;
  std::size_t degree = 0;  // random-regular
  std::size_t m = 0;       // barabasi-albert
  double p = 0;            // erdos-renyi
  friend bool operator==(const RandomStructure&, const RandomStructure&) = default;
};

enum class FileFormat { edgelist, gexf };

struct FileStructure {
  std::string path;
  FileFormat format = FileFormat::edgelist;
  bool directed = false;
  friend bool operator==(const FileStructure&, const FileStructure&) = default;
};

using StructureSpec = std::variant<RandomStructure, FileStructure>;

// ---- definitions ------------------------------------------------------------

enum class ModelKind { diffusion, custom };

struct RandomWithWeight {
  double weight = 0;
  friend bool operator==(const RandomWithWeight&, const RandomWithWeight&) = default;
};
struct RandomWithCount {
  std::size_t count = 0;
  friend bool operator==(const RandomWithCount&, const RandomWithCount&) = default;
};
struct ChooseWithMetric {
  MetricName metric = MetricName::pagerank;
  std::size_t count = 0;
  friend bool operator==(const ChooseWithMetric&, const ChooseWithMetric&) = default;
};
// One node id per line; '#' comments and blank lines ignored.
struct FromFile {
  std::string path;
  friend bool operator==(const FromFile&, const FromFile&) = default;
};

using NodeTypeInit = std::variant<RandomWithWeight, RandomWithCount, ChooseWithMetric, FromFile>;

struct NumericalParam {
  double low = 0;
  double high = 0;
  friend bool operator==(const NumericalParam&, const NumericalParam&) = default;
};
struct CategoricalParam {
  std::vector<std::string> options;
  std::vector<double> weights;  // empty = uniform
  friend bool operator==(const CategoricalParam&, const CategoricalParam&) = default;
};
using ParamSpec = std::variant<NumericalParam, CategoricalParam>;

struct NodeStochasticSpec {
  double ratio = 0;
  std::optional<std::string> triggering_status;
  friend bool operator==(const NodeStochasticSpec&, const NodeStochasticSpec&) = default;
};
struct CountDownSpec {
  std::string name;
  std::size_t iteration_count = 1;
  friend bool operator==(const CountDownSpec&, const CountDownSpec&) = default;
};
struct NodeCategoricalSpec {
  std::string attribute;
  std::string value;
  double probability = 0;
  friend bool operator==(const NodeCategoricalSpec&, const NodeCategoricalSpec&) = default;
};
using CompartmentSpec = std::variant<NodeStochasticSpec, CountDownSpec, NodeCategoricalSpec>;

struct RuleSpec {
  std::string from_type;
  std::string to_type;
  std::string compartment;
  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

struct DefinitionsSpec {
  std::string model_key = "pd-model";
  ModelKind model_kind = ModelKind::custom;
  Ordered<NodeTypeInit> nodetypes;
  Ordered<ParamSpec> node_parameters;
  Ordered<ParamSpec> edge_parameters;
  Ordered<CompartmentSpec> compartments;
  Ordered<RuleSpec> rules;
  Ordered<AttributeValue> network_parameters;
  friend bool operator==(const DefinitionsSpec&, const DefinitionsSpec&) = default;
};

// Dotted document path -> candidate values.
using SweepSpec = Ordered<std::vector<AttributeValue>>;

struct ProjectConfig {
  std::string name;
  StructureSpec structure;
  DefinitionsSpec definitions;
  std::optional<SweepSpec> sweep;
  friend bool operator==(const ProjectConfig&, const ProjectConfig&) = default;

  std::vector<std::string> type_names() const;
};

// ---- operations -------------------------------------------------------------

// Parses a YAML document. Throws ConfigError carrying the document path for
// syntax errors, unknown keys and wrongly typed values.
ProjectConfig parse_config(std::string_view yaml_text);
ProjectConfig load_config(const std::filesystem::path& path);

// Canonical YAML text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ProjectConfig& config);

// Every violated invariant as a readable message; empty when valid.
// `n_hint` is the node count when known (random structures supply their own).
std::vector<std::string> validate(const ProjectConfig& config, std::optional<std::size_t> n_hint = std::nullopt);

// Node count implied by the structure section, if it is a random generator.
std::optional<std::size_t> structure_node_count(const ProjectConfig& config);

struct SweepVariant {
  std::string parameter;  // dotted path; empty for the base configuration
  AttributeValue value;
  ProjectConfig config;  // sweep section removed

  // "r_UT=0.4" (last path segment), or "base".
  std::string label() const;
};

// One-factor-at-a-time expansion: one variant per (parameter, value), in
// declaration order, other parameters at their base values. Without a sweep
// section the result is the base configuration alone.
std::vector<SweepVariant> expand_sweep(const ProjectConfig& config);

}  // namespace crowdkit::config
