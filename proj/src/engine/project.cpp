#include <cstdlib>
#include <fstream>
#include <sstream>

#include "crowdkit/errors.hpp"
#include "crowdkit/engine.hpp"
#include "json.hpp"

namespace crowdkit::engine {

namespace fs = std::filesystem;
using nlohmann::json;

Project Project::create(const fs::path& root, const config::ProjectConfig& config, const fs::path& source_dir) {
  if (auto violations = config::validate(config); !violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  fs::create_directories(root);
  Project p;
  p.root_ = root;
  p.config_ = config;
  p.source_dir_ = source_dir.empty() ? fs::current_path() : fs::absolute(source_dir);
  {
    std::ofstream out(root / "config.yaml", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (root / "config.yaml").string());
    out << config::serialize_config(config);
  }
  std::ofstream meta(root / "project.json", std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write " + (root / "project.json").string());
  meta << json{{"name", config.name}, {"source_dir", p.source_dir_.string()}}.dump(1) << "\n";
  return p;
}

Project Project::open(const fs::path& root) {
  const auto meta_path = root / "project.json";
  std::ifstream in(meta_path);
  if (!in) throw ConfigError("", "not a project directory: " + root.string());
  json meta;
  try {
    meta = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(meta_path.string(), 0, e.what());
  }
  Project p;
  p.root_ = root;
  p.config_ = config::load_config(root / "config.yaml");
  p.source_dir_ = meta.value("source_dir", root.string());
  return p;
}

std::vector<fs::path> Project::simulations() const {
  std::vector<fs::path> out;
  if (!fs::is_directory(root_)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(root_))
    if (entry.is_regular_file() && entry.path().filename() == "run-meta.json") out.push_back(entry.path().parent_path());
  std::sort(out.begin(), out.end());
  return out;
}

fs::path default_home() {
  if (const char* home = std::getenv("CROWDKIT_HOME"); home && *home) return home;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".crowdkit";
  return fs::current_path() / ".crowdkit";
}

}  // namespace crowdkit::engine
