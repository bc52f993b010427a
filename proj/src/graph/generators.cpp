#include "crowdkit/generators.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crowdkit/errors.hpp"

namespace crowdkit {

namespace {

using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

// True when at least one pair of distinct leftover nodes is not yet joined.
bool can_continue(const EdgeSet& edges, const std::map<NodeId, std::size_t>& leftover) {
  if (leftover.empty()) return true;
  for (auto a = leftover.begin(); a != leftover.end(); ++a)
    for (auto b = std::next(a); b != leftover.end(); ++b)
      if (!edges.contains({a->first, b->first})) return true;
  return false;
}

// One attempt of the Steger-Wormald pairing; empty optional on a dead end.
std::optional<EdgeSet> try_regular(std::size_t n, std::size_t degree, Rng& rng) {
  EdgeSet edges;
  std::vector<NodeId> stubs;
  stubs.reserve(n * degree);
  for (std::size_t k = 0; k < degree; ++k)
    for (NodeId v = 0; v < n; ++v) stubs.push_back(v);

  while (!stubs.empty()) {
    std::map<NodeId, std::size_t> leftover;
    rng.shuffle(std::span<NodeId>(stubs));
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      NodeId a = stubs[i], b = stubs[i + 1];
      if (a > b) std::swap(a, b);
      if (a != b && !edges.contains({a, b})) {
        edges.insert({a, b});
      } else {
        ++leftover[a];
        ++leftover[b];
      }
    }
    if (!can_continue(edges, leftover)) return std::nullopt;
    stubs.clear();
    for (const auto& [v, count] : leftover) stubs.insert(stubs.end(), count, v);
  }
  return edges;
}

}  // namespace

Graph generate_random_regular(std::size_t n, std::size_t degree, Rng& rng) {
  if ((n * degree) % 2 != 0)
    throw ConfigError("random-regular: n * degree must be even (n=" + std::to_string(n) +
                      ", degree=" + std::to_string(degree) + ")");
  if (degree >= n && !(n == 0 && degree == 0))
    throw ConfigError("random-regular: degree must be smaller than n (n=" + std::to_string(n) +
                      ", degree=" + std::to_string(degree) + ")");

  Graph g(n);
  if (degree == 0) return g;
  if (degree == n - 1) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  for (;;) {
    if (auto edges = try_regular(n, degree, rng)) {
      for (const auto& [u, v] : *edges) g.add_edge(u, v);
      return g;
    }
  }
}

Graph generate_barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || m >= n)
    throw ConfigError("barabasi-albert: requires 1 <= m < n (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  Graph g(n);
  // one entry per edge endpoint: sampling from it is degree-proportional
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * n);
  for (NodeId u = 0; u < m; ++u)
    for (NodeId v = u + 1; v < m; ++v) {
      g.add_edge(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }

  std::vector<NodeId> targets;
  for (NodeId source = static_cast<NodeId>(m); source < n; ++source) {
    targets.clear();
    while (targets.size() < m) {
      NodeId t = endpoints.empty() ? static_cast<NodeId>(rng.below(source))
                                   : endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      g.add_edge(source, t);
      endpoints.push_back(source);
      endpoints.push_back(t);
    }
  }
  return g;
}

Graph generate_erdos_renyi(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("erdos-renyi: p must lie in [0, 1]");
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

}  // namespace crowdkit
