#pragma once

#include <filesystem>

#include "crowdkit/attributes.hpp"
#include "crowdkit/config.hpp"
#include "crowdkit/graph.hpp"
#include "crowdkit/graph_io.hpp"
#include "crowdkit/random.hpp"

namespace crowdkit::config {

struct Population {
  NodeLabels states;
  AttributeTable attrs;
  ParamMap net_params;
};

// Assigns node types and draws node/edge parameters.
//
// Assignment order: choose_with_metric (top-k over the whole graph), then
// from-file lists, then random-with-count as a shuffled exact partition of the
// remaining nodes, then random-with-weight by one weighted draw per remaining
// node. Node parameters are drawn key by key, nodes in ascending id; edge
// parameters likewise over the canonical edge list.
//
// Relative from-file paths are resolved against `base_dir`.
// Throws ConfigError when counts cannot be met or a listed id is not a node.
Population initialize_population(const ProjectConfig& config, const Graph& graph, Rng& rng,
                                 const std::filesystem::path& base_dir = {});

// Builds the graph described by the structure section. File paths are
// resolved against `base_dir`.
Graph build_structure(const ProjectConfig& config, Rng& rng, const std::filesystem::path& base_dir = {});

}  // namespace crowdkit::config
