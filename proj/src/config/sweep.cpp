#include <charconv>

#include "crowdkit/config.hpp"
#include "crowdkit/errors.hpp"
#include "yaml_util.hpp"

namespace crowdkit::config {

namespace detail {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const auto end = dot == std::string_view::npos ? path.size() : dot;
    parts.emplace_back(path.substr(start, end - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

}  // namespace

std::optional<YAML::Node> resolve_path(const YAML::Node& root, std::string_view path) {
  auto parts = split_path(path);
  if (parts.empty() || parts.front().empty()) return std::nullopt;
  // definitions.X is shorthand for definitions.<model key>.X
  if (parts.size() >= 2 && parts[0] == "definitions" && root["definitions"] && root["definitions"].IsMap() &&
      root["definitions"].size() == 1) {
    const auto model_key = root["definitions"].begin()->first.as<std::string>();
    if (parts[1] != model_key) parts.insert(parts.begin() + 1, model_key);
  }
  YAML::Node cur = root;
  for (const auto& part : parts) {
    if (part.empty()) return std::nullopt;
    const YAML::Node& view = cur;
    if (view.IsMap()) {
      const YAML::Node child = view[part];
      if (!child) return std::nullopt;
      cur.reset(child);
    } else if (view.IsSequence()) {
      std::size_t idx = 0;
      auto res = std::from_chars(part.data(), part.data() + part.size(), idx);
      if (res.ec != std::errc{} || res.ptr != part.data() + part.size() || idx >= view.size()) return std::nullopt;
      const YAML::Node child = view[idx];
      cur.reset(child);
    } else {
      return std::nullopt;
    }
  }
  return cur;
}

}  // namespace detail

std::string SweepVariant::label() const {
  if (parameter.empty()) return "base";
  const auto dot = parameter.rfind('.');
  const auto leaf = dot == std::string::npos ? parameter : parameter.substr(dot + 1);
  return leaf + "=" + to_text(value);
}

std::vector<SweepVariant> expand_sweep(const ProjectConfig& config) {
  ProjectConfig base = config;
  base.sweep.reset();
  std::vector<SweepVariant> out;
  if (!config.sweep || config.sweep->empty()) {
    out.push_back(SweepVariant{"", AttributeValue{}, std::move(base)});
    return out;
  }
  const auto base_text = serialize_config(base);
  for (const auto& [path, values] : *config.sweep) {
    for (const auto& value : values) {
      YAML::Node tree = YAML::Load(base_text);
      auto target = detail::resolve_path(tree, path);
      if (!target) throw ConfigError("sweep." + path, "path does not resolve into the configuration");
      if (!target->IsScalar()) throw ConfigError("sweep." + path, "only scalar values can be swept");
      switch (kind_of(value)) {
        case ValueKind::category:
          *target = std::get<std::string>(value);
          target->SetTag("!");
          break;
        case ValueKind::number:
          *target = detail::format_real(std::get<double>(value));
          target->SetTag("?");
          break;
        case ValueKind::integer:
          *target = to_text(value);
          target->SetTag("?");
          break;
      }
      SweepVariant variant{path, value, ProjectConfig{}};
      try {
        variant.config = detail::from_yaml(tree);
      } catch (const ConfigError& e) {
        throw ConfigError("sweep." + path, "value " + to_text(value) + " rejected (" + e.what() + ")");
      }
      out.push_back(std::move(variant));
    }
  }
  return out;
}

}  // namespace crowdkit::config
