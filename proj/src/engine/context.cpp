#include <numeric>
#include <stdexcept>

#include "crowdkit/engine.hpp"

namespace crowdkit::engine {

SimContext::SimContext(Graph graph, NodeLabels states, AttributeTable attrs, ParamMap net_params,
                       std::vector<std::string> type_names, Rng rng)
    : graph_(std::move(graph)),
      states_(std::move(states)),
      attrs_(std::move(attrs)),
      params_(std::move(net_params)),
      type_names_(std::move(type_names)),
      rng_(std::move(rng)) {
  if (states_.size() != graph_.node_count()) throw std::invalid_argument("one state per node is required");
  for (const auto& t : type_names_) counts_[t] = 0;
  for (const auto& s : states_) {
    auto it = counts_.find(s);
    if (it == counts_.end()) throw std::invalid_argument("state '" + s + "' is not a declared node type");
    ++it->second;
  }
}

void SimContext::set_type(NodeId v, std::string_view type) {
  if (v >= states_.size()) throw std::invalid_argument("unknown node " + std::to_string(v));
  auto to = counts_.find(type);
  if (to == counts_.end()) throw std::invalid_argument("'" + std::string(type) + "' is not a declared node type");
  if (states_[v] == type) return;
  --counts_.find(states_[v])->second;
  ++to->second;
  states_[v] = to->first;
  ++entered_now_[to->first];
}

std::size_t SimContext::count(std::string_view type) const {
  auto it = counts_.find(type);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t SimContext::entered_previous(std::string_view type) const {
  auto it = entered_prev_.find(type);
  return it == entered_prev_.end() ? 0 : it->second;
}

std::size_t SimContext::entered_current(std::string_view type) const {
  auto it = entered_now_.find(type);
  return it == entered_now_.end() ? 0 : it->second;
}

const AttributeValue* SimContext::param(std::string_view key) const {
  auto it = params_.find(key);
  return it == params_.end() ? nullptr : &it->second;
}

double SimContext::number_param(std::string_view key, double fallback) const {
  const auto* v = param(key);
  if (!v) return fallback;
  auto d = as_number(*v);
  if (!d) throw std::invalid_argument("network parameter '" + std::string(key) + "' is not numeric");
  return *d;
}

void SimContext::mutate_edges(std::span<const Edge> add, std::span<const Edge> remove) {
  const auto n = graph_.node_count();
  auto check = [n](const Edge& e) {
    if (e.source >= n || e.target >= n)
      throw std::invalid_argument("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                                  ") references an unknown node");
    if (e.source == e.target) throw std::invalid_argument("self-loop on node " + std::to_string(e.source));
  };
  for (const auto& e : add) check(e);
  for (const auto& e : remove) check(e);
  for (const auto& e : add) graph_.add_edge(e.source, e.target);
  for (const auto& e : remove) {
    if (graph_.remove_edge(e.source, e.target)) attrs_.erase_edge(e, !graph_.directed());
  }
}

void SimContext::begin_iteration(long iteration) {
  iteration_ = iteration;
  entered_prev_ = std::move(entered_now_);
  entered_now_.clear();
}

std::vector<NodeId> shuffle_agents(SimContext& ctx) {
  std::vector<NodeId> order(ctx.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  ctx.rng().shuffle(std::span<NodeId>(order));
  return order;
}

}  // namespace crowdkit::engine
