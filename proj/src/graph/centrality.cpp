#include "crowdkit/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "crowdkit/errors.hpp"

namespace crowdkit {

std::optional<MetricName> parse_metric(std::string_view name) noexcept {
  if (name == "pagerank") return MetricName::pagerank;
  if (name == "degree") return MetricName::degree;
  if (name == "betweenness") return MetricName::betweenness;
  if (name == "closeness") return MetricName::closeness;
  if (name == "eigenvector") return MetricName::eigenvector;
  if (name == "katz") return MetricName::katz;
  return std::nullopt;
}

std::string_view metric_name(MetricName metric) noexcept {
  switch (metric) {
    case MetricName::pagerank: return "pagerank";
    case MetricName::degree: return "degree";
    case MetricName::betweenness: return "betweenness";
    case MetricName::closeness: return "closeness";
    case MetricName::eigenvector: return "eigenvector";
    case MetricName::katz: return "katz";
  }
  return "unknown";
}

namespace {

void require_nonempty(const Graph& g, std::string_view metric) {
  if (g.empty()) throw std::invalid_argument(std::string(metric) + ": graph has no nodes");
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

void normalize_l2(std::vector<double>& x) {
  double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  if (norm > 0)
    for (double& v : x) v /= norm;
}

}  // namespace

std::vector<double> pagerank(const Graph& g, const CentralityParams& params) {
  require_nonempty(g, "pagerank");
  const std::size_t n = g.node_count();
  const double d = params.damping;
  std::vector<double> x(n, 1.0 / n), next(n);
  std::vector<double> inv_out(n, 0.0);
  for (NodeId v = 0; v < n; ++v)
    if (auto k = g.out_degree(v)) inv_out[v] = 1.0 / static_cast<double>(k);

  for (std::size_t iter = 0; iter < params.pagerank_max_iter; ++iter) {
    double dangling = 0;
    for (NodeId v = 0; v < n; ++v)
      if (inv_out[v] == 0.0) dangling += x[v];
    const double base = (1.0 - d) / n + d * dangling / n;
    for (NodeId v = 0; v < n; ++v) {
      double in = 0;
      for (NodeId u : g.predecessors(v)) in += x[u] * inv_out[u];
      next[v] = base + d * in;
    }
    const double change = l1_distance(next, x);
    x.swap(next);
    if (change < params.tolerance) {
      const double total = std::accumulate(x.begin(), x.end(), 0.0);
      for (double& v : x) v /= total;
      return x;
    }
  }
  throw NumericError("pagerank did not converge within " + std::to_string(params.pagerank_max_iter) + " iterations");
}

std::vector<double> degree_centrality(const Graph& g) {
  require_nonempty(g, "degree");
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 1.0);
  if (n == 1) return scores;
  for (NodeId v = 0; v < n; ++v) scores[v] = static_cast<double>(g.degree(v)) / static_cast<double>(n - 1);
  return scores;
}

// Brandes (2001) for unweighted graphs.
std::vector<double> betweenness_centrality(const Graph& g) {
  require_nonempty(g, "betweenness");
  const std::size_t n = g.node_count();
  std::vector<double> cb(n, 0.0);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<std::vector<NodeId>> parents(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::queue<NodeId> queue;

  for (NodeId s = 0; s < n; ++s) {
    order.clear();
    for (NodeId v = 0; v < n; ++v) parents[v].clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    sigma[s] = 1;
    dist[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop();
      order.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          parents[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : parents[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  if (n > 2) {
    // undirected sums count every pair twice, hence the same scale factor
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& v : cb) v *= scale;
  } else {
    std::fill(cb.begin(), cb.end(), 0.0);
  }
  return cb;
}

std::vector<double> closeness_centrality(const Graph& g) {
  require_nonempty(g, "closeness");
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 0.0);
  std::vector<long> dist(n);
  std::queue<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.push(s);
    double total = 0;
    std::size_t reached = 1;
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop();
      // incoming distances on directed graphs
      for (NodeId w : g.predecessors(v)) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        total += static_cast<double>(dist[w]);
        ++reached;
        queue.push(w);
      }
    }
    if (total > 0) scores[s] = static_cast<double>(reached - 1) / total;
  }
  return scores;
}

std::vector<double> eigenvector_centrality(const Graph& g, const CentralityParams& params) {
  require_nonempty(g, "eigenvector");
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 1.0 / n), next(n);
  // iterate with (A + I): same eigenvectors, no oscillation on bipartite graphs
  for (std::size_t iter = 0; iter < params.power_max_iter; ++iter) {
    for (NodeId v = 0; v < n; ++v) {
      double sum = x[v];
      for (NodeId u : g.predecessors(v)) sum += x[u];
      next[v] = sum;
    }
    normalize_l2(next);
    const double change = l1_distance(next, x);
    x.swap(next);
    if (change < static_cast<double>(n) * params.tolerance) return x;
  }
  throw NumericError("eigenvector centrality did not converge within " + std::to_string(params.power_max_iter) +
                     " iterations");
}

std::vector<double> katz_centrality(const Graph& g, const CentralityParams& params) {
  require_nonempty(g, "katz");
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 0.0), next(n);
  for (std::size_t iter = 0; iter < params.power_max_iter; ++iter) {
    double largest = 0;
    for (NodeId v = 0; v < n; ++v) {
      double sum = 0;
      for (NodeId u : g.predecessors(v)) sum += x[u];
      next[v] = params.katz_alpha * sum + params.katz_beta;
      largest = std::max(largest, std::abs(next[v]));
    }
    if (!std::isfinite(largest) || largest > 1e150)
      throw NumericError("katz centrality diverged (alpha must be below 1 / largest eigenvalue)");
    const double change = l1_distance(next, x);
    x.swap(next);
    if (change < static_cast<double>(n) * params.tolerance) {
      normalize_l2(x);
      return x;
    }
  }
  throw NumericError("katz centrality did not converge within " + std::to_string(params.power_max_iter) +
                     " iterations");
}

std::vector<double> centrality(const Graph& graph, MetricName metric, const CentralityParams& params) {
  switch (metric) {
    case MetricName::pagerank: return pagerank(graph, params);
    case MetricName::degree: return degree_centrality(graph);
    case MetricName::betweenness: return betweenness_centrality(graph);
    case MetricName::closeness: return closeness_centrality(graph);
    case MetricName::eigenvector: return eigenvector_centrality(graph, params);
    case MetricName::katz: return katz_centrality(graph, params);
  }
  throw std::invalid_argument("unknown metric");
}

std::vector<NodeId> top_k(const std::vector<double>& scores, std::size_t k) {
  std::vector<NodeId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  k = std::min(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(),
                    [&](NodeId a, NodeId b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  ids.resize(k);
  return ids;
}

std::vector<NodeId> top_k_by_metric(const Graph& graph, MetricName metric, std::size_t k,
                                    const CentralityParams& params) {
  if (k == 0 || k > graph.node_count())
    throw ConfigError("top-k by " + std::string(metric_name(metric)) + ": k=" + std::to_string(k) +
                      " must lie in [1, " + std::to_string(graph.node_count()) + "]");
  return top_k(centrality(graph, metric, params), k);
}

}  // namespace crowdkit
