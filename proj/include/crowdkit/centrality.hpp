#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "crowdkit/graph.hpp"

namespace crowdkit {

enum class MetricName { pagerank, degree, betweenness, closeness, eigenvector, katz };

std::optional<MetricName> parse_metric(std::string_view name) noexcept;
std::string_view metric_name(MetricName metric) noexcept;

struct CentralityParams {
  double damping = 0.85;         // pagerank
  double tolerance = 1e-9;       // pagerank, eigenvector, katz
  std::size_t pagerank_max_iter = 200;
  std::size_t power_max_iter = 1000;  // eigenvector, katz
  double katz_alpha = 0.1;
  double katz_beta = 1.0;
};

// Scores indexed by node id. Throws NumericError naming the metric when an
// iterative method does not converge, std::invalid_argument on an empty graph.
std::vector<double> centrality(const Graph& graph, MetricName metric, const CentralityParams& params = {});

std::vector<double> pagerank(const Graph& graph, const CentralityParams& params = {});
std::vector<double> degree_centrality(const Graph& graph);
std::vector<double> betweenness_centrality(const Graph& graph);
std::vector<double> closeness_centrality(const Graph& graph);
std::vector<double> eigenvector_centrality(const Graph& graph, const CentralityParams& params = {});
std::vector<double> katz_centrality(const Graph& graph, const CentralityParams& params = {});

// The k highest-scoring node ids, descending by score, ties by ascending id.
std::vector<NodeId> top_k(const std::vector<double>& scores, std::size_t k);
// Throws ConfigError when k is 0 or exceeds the node count.
std::vector<NodeId> top_k_by_metric(const Graph& graph, MetricName metric, std::size_t k,
                                    const CentralityParams& params = {});

}  // namespace crowdkit
