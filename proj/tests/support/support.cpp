#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include <unistd.h>

#include "crowdkit/generators.hpp"
#include "crowdkit/graph_io.hpp"
#include "crowdkit/random.hpp"
#include "crowdkit/scenarios.hpp"

namespace testsupport {

TempDir::TempDir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto base = fs::temp_directory_path();
  crowdkit::Rng rng(std::random_device{}());
  for (;;) {
    path_ = base / ("crowdkit-" + tag + "-" + std::to_string(rng.next() % 1000000) + "-" + std::to_string(counter++));
    if (fs::create_directories(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

namespace {

std::map<std::string, std::string> tree(const fs::path& root, const std::vector<std::string>& skip) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    if (std::find(skip.begin(), skip.end(), e.path().filename().string()) != skip.end()) continue;
    out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return out;
}

}  // namespace

bool same_tree(const fs::path& a, const fs::path& b, const std::vector<std::string>& skip) {
  const auto ta = tree(a, skip);
  return !ta.empty() && ta == tree(b, skip);
}

crowdkit::config::ProjectConfig fixture(const std::string& scenario) {
  const auto* s = crowdkit::scenarios::find_scenario(scenario);
  if (!s) throw std::runtime_error("no scenario " + scenario);
  return crowdkit::config::parse_config(s->fixture);
}

crowdkit::Graph ic_test_graph() {
  crowdkit::Graph g(8);
  for (auto [u, v] : std::vector<std::pair<crowdkit::NodeId, crowdkit::NodeId>>{
           {0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 7}, {6, 7}, {2, 5}})
    g.add_edge(u, v);
  return g;
}

crowdkit::config::ProjectConfig ic_config(const crowdkit::Graph& g, const std::vector<crowdkit::NodeId>& seeds,
                                          const fs::path& dir, const std::string& draw_mode) {
  crowdkit::write_gexf(g, crowdkit::NodeLabels(g.node_count(), "Inactive"), crowdkit::AttributeTable(g.node_count()),
                       dir / "graph.gexf");
  std::string ids;
  for (auto v : seeds) ids += std::to_string(v) + "\n";
  spit(dir / "seeds.txt", ids);
  auto c = fixture("infmax");
  c.name = "ic-test";
  c.structure = crowdkit::config::FileStructure{(dir / "graph.gexf").string(), crowdkit::config::FileFormat::gexf, false};
  c.definitions.nodetypes = {
      {"Active_Spreader", crowdkit::config::FromFile{(dir / "seeds.txt").string()}},
      {"Active", crowdkit::config::RandomWithCount{0}},
      {"Inactive", crowdkit::config::RandomWithCount{g.node_count() - seeds.size()}},
  };
  c.definitions.network_parameters = {{"draw-mode", draw_mode}};
  return c;
}

crowdkit::Graph synthetic_facebook(std::uint64_t seed) {
  crowdkit::Rng rng(seed);
  auto g = crowdkit::generate_barabasi_albert(facebook_nodes, 21, rng);
  // close random open triangles: pick a node, two of its neighbors, link them
  while (g.edge_count() < facebook_edges) {
    const auto v = static_cast<crowdkit::NodeId>(rng.below(g.node_count()));
    const auto nb = g.neighbors(v);
    if (nb.size() < 2) continue;
    const auto a = nb[rng.below(nb.size())];
    const auto b = nb[rng.below(nb.size())];
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

const FacebookGraph& facebook_graph() {
  static FacebookGraph fb;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<fs::path> candidates;
    if (const char* env = std::getenv("CROWDKIT_FACEBOOK_EDGELIST")) candidates.emplace_back(env);
    candidates.push_back(fs::path(CROWDKIT_SOURCE_DIR) / "data" / "facebook_combined.txt");
    for (const auto& c : candidates) {
      if (fs::exists(c)) {
        fb.graph = crowdkit::load_edge_list(c);
        fb.source = c;
        return;
      }
    }
    fb.graph = synthetic_facebook();
    fb.synthetic = true;
    fb.source = fs::temp_directory_path() / ("crowdkit-synthetic-facebook-" + std::to_string(::getpid()) + ".txt");
    crowdkit::write_edge_list(fb.graph, fb.source);
    std::cerr << "note: SNAP facebook_combined.txt not found; using a synthetic graph with "
              << fb.graph.node_count() << " nodes and " << fb.graph.edge_count()
              << " edges (run scripts/fetch_facebook.sh for the real one)\n";
  });
  return fb;
}

}  // namespace testsupport
