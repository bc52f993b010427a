#pragma once

// Internal helpers shared by the config translation units.

#include <yaml-cpp/yaml.h>

#include <optional>
#include <string>
#include <string_view>

#include "crowdkit/attributes.hpp"
#include "crowdkit/config.hpp"

namespace crowdkit::config::detail {

std::string join_path(std::string_view base, std::string_view key);

// Typed scalar: quoted -> category, integral text -> integer, numeric text ->
// number, anything else -> category.
AttributeValue scalar_value(const YAML::Node& node, const std::string& path);

// Shortest round-trip text, always carrying a '.' or exponent.
std::string format_real(double d);

// Emits a scalar so that scalar_value() reads back the same variant.
void emit_value(YAML::Emitter& out, const AttributeValue& value);

YAML::Node to_yaml(const ProjectConfig& config);
ProjectConfig from_yaml(const YAML::Node& root);

// Node at a dotted path inside `root`, resolving the `definitions.<key>`
// shorthand to the model block. The returned handle aliases the tree.
std::optional<YAML::Node> resolve_path(const YAML::Node& root, std::string_view path);

}  // namespace crowdkit::config::detail
