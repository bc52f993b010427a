#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crowdkit/config.hpp"
#include "crowdkit/graph.hpp"

namespace testsupport {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& path);
void spit(const fs::path& path, const std::string& text);

// Byte-level comparison of two directory trees (relative paths + contents),
// ignoring files whose name is in `skip`.
bool same_tree(const fs::path& a, const fs::path& b, const std::vector<std::string>& skip = {});

crowdkit::config::ProjectConfig fixture(const std::string& scenario);

// The real SNAP ego-Facebook graph when available ($CROWDKIT_FACEBOOK_EDGELIST
// or data/facebook_combined.txt in the source tree); otherwise a synthetic
// graph with the same node and edge counts.
struct FacebookGraph {
  crowdkit::Graph graph;
  bool synthetic = false;
  fs::path source;  // edge list on disk (written for the stand-in)
};
const FacebookGraph& facebook_graph();
constexpr std::size_t facebook_nodes = 4039;
constexpr std::size_t facebook_edges = 88234;

// Fixed 8-node graph with cycles and mixed degrees for cascade oracles.
crowdkit::Graph ic_test_graph();

// Influence-maximization config over `g` (written as GEXF into `dir`) with
// the given seed nodes as spreaders and everything else inactive.
crowdkit::config::ProjectConfig ic_config(const crowdkit::Graph& g, const std::vector<crowdkit::NodeId>& seeds,
                                          const fs::path& dir, const std::string& draw_mode = "single");

// Deterministic stand-in: preferential attachment plus triadic closure
// until the edge count matches.
crowdkit::Graph synthetic_facebook(std::uint64_t seed = 4039);

}  // namespace testsupport
