#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace oracle {

using crowdkit::Graph;
using crowdkit::NodeId;

std::vector<double> dense_pagerank(const Graph& g, double d) {
  const std::size_t n = g.node_count();
  // x = d * M x + (1 - d)/n  with M column-stochastic, dangling columns 1/n
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 1.0;
    a[i][n] = (1.0 - d) / static_cast<double>(n);
  }
  for (NodeId u = 0; u < n; ++u) {
    const auto out = g.neighbors(u);
    if (out.empty()) {
      for (std::size_t i = 0; i < n; ++i) a[i][u] -= d / static_cast<double>(n);
    } else {
      for (NodeId v : out) a[v][u] -= d / static_cast<double>(out.size());
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

std::vector<double> brute_betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> score(n, 0.0);
  // all-pairs distances by BFS
  std::vector<std::vector<long>> dist(n, std::vector<long>(n, -1));
  for (NodeId s = 0; s < n; ++s) {
    std::vector<NodeId> queue{s};
    dist[s][s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (NodeId w : g.neighbors(queue[h]))
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][queue[h]] + 1;
          queue.push_back(w);
        }
  }
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || dist[s][t] < 0) continue;
      if (!g.directed() && t < s) continue;
      std::vector<std::vector<NodeId>> paths;
      std::vector<NodeId> cur{s};
      std::function<void(NodeId)> walk = [&](NodeId v) {
        if (v == t) {
          paths.push_back(cur);
          return;
        }
        for (NodeId w : g.neighbors(v))
          if (dist[s][w] == dist[s][v] + 1 && dist[w][t] == dist[v][t] - 1) {
            cur.push_back(w);
            walk(w);
            cur.pop_back();
          }
      };
      walk(s);
      for (const auto& p : paths)
        for (std::size_t i = 1; i + 1 < p.size(); ++i) score[p[i]] += 1.0 / static_cast<double>(paths.size());
    }
  }
  if (n > 2) {
    const double norm = static_cast<double>((n - 1) * (n - 2));
    for (auto& x : score) x *= (g.directed() ? 1.0 : 2.0) / norm;
  }
  return score;
}

namespace {

// state codes
constexpr int inactive = 0, spreader = 1, spent = 2;

double expected_from(const Graph& g, const std::vector<int>& state, IcDraw draw) {
  std::vector<NodeId> candidates;
  std::vector<double> prob;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (state[v] != inactive) continue;
    double best = 0, none = 1;
    bool any = false;
    for (NodeId u : g.predecessors(v)) {
      if (state[u] != spreader) continue;
      any = true;
      const double p = 1.0 / static_cast<double>(g.in_degree(v));
      best = std::max(best, p);
      none *= 1.0 - p;
    }
    if (!any) continue;
    candidates.push_back(v);
    prob.push_back(draw == IcDraw::single ? best : 1.0 - none);
  }
  if (candidates.empty()) {
    double active = 0;
    for (int s : state) active += s != inactive;
    return active;
  }
  double total = 0;
  const std::size_t k = candidates.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double p = 1;
    auto next = state;
    for (auto& s : next)
      if (s == spreader) s = spent;
    for (std::size_t i = 0; i < k; ++i) {
      const bool on = (mask >> i) & 1;
      p *= on ? prob[i] : 1.0 - prob[i];
      if (on) next[candidates[i]] = spreader;
    }
    if (p > 0) total += p * expected_from(g, next, draw);
  }
  return total;
}

}  // namespace

double ic_expected_spread(const Graph& g, const std::vector<NodeId>& seeds, IcDraw draw) {
  if (g.node_count() > 12) throw std::invalid_argument("oracle is exponential; keep graphs tiny");
  std::vector<int> state(g.node_count(), inactive);
  for (NodeId s : seeds) state[s] = spreader;
  return expected_from(g, state, draw);
}

std::vector<double> mean_of(const std::vector<std::vector<double>>& rows) {
  std::vector<double> sum(rows.at(0).size(), 0.0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) sum[i] += r[i];
  for (auto& x : sum) x /= static_cast<double>(rows.size());
  return sum;
}

}  // namespace oracle
