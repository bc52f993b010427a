#include <iostream>

#include "crowdkit/errors.hpp"
#include "crowdkit/rules.hpp"

namespace crowdkit::rules {

const CountdownLedger::Entry* CountdownLedger::find(NodeId v, std::string_view name) const {
  auto it = entries_.find({v, std::string(name)});
  return it == entries_.end() ? nullptr : &it->second;
}

void CountdownLedger::set(NodeId v, std::string_view name, std::string from_type, std::size_t remaining) {
  entries_[{v, std::string(name)}] = Entry{std::move(from_type), remaining};
}

void CountdownLedger::erase(NodeId v, std::string_view name) { entries_.erase({v, std::string(name)}); }

void CountdownLedger::erase_node(NodeId v) {
  auto it = entries_.lower_bound({v, std::string{}});
  while (it != entries_.end() && it->first.first == v) it = entries_.erase(it);
}

void CountdownLedger::prune(const NodeLabels& states) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    const NodeId v = it->first.first;
    if (v >= states.size() || states[v] != it->second.from_type)
      it = entries_.erase(it);
    else
      ++it;
  }
}

NodeStochastic::NodeStochastic(double ratio, std::optional<std::string> triggering_status)
    : ratio_(ratio), trigger_(std::move(triggering_status)) {}

bool NodeStochastic::evaluate(const EvalContext& ctx) const {
  if (trigger_) {
    bool eligible = false;
    for (NodeId u : ctx.view.graph.predecessors(ctx.node)) {
      if (ctx.view.states[u] == *trigger_) {
        eligible = true;
        break;
      }
    }
    if (!eligible) return false;
  }
  return ctx.rng.bernoulli(ratio_);
}

CountDown::CountDown(std::string name, std::size_t iteration_count) : name_(std::move(name)), count_(iteration_count) {}

bool CountDown::evaluate(const EvalContext& ctx) const {
  const auto* entry = ctx.ledger.find(ctx.node, name_);
  std::size_t remaining = entry && entry->from_type == ctx.from_type ? entry->remaining : count_;
  if (remaining > 0) --remaining;
  if (remaining == 0) {
    ctx.ledger.erase(ctx.node, name_);
    return true;
  }
  ctx.ledger.set(ctx.node, name_, std::string(ctx.from_type), remaining);
  return false;
}

NodeCategorical::NodeCategorical(std::string attribute, std::string value, double probability)
    : attribute_(std::move(attribute)), value_(std::move(value)), probability_(probability) {}

bool NodeCategorical::evaluate(const EvalContext& ctx) const {
  const auto* value = ctx.view.attrs.node(ctx.node, attribute_);
  if (!value) {
    if (!warned_.exchange(true))
      std::cerr << "warning: node " << ctx.node << " has no attribute '" << attribute_
                << "'; node-categorical treats such nodes as not eligible\n";
    return false;
  }
  if (to_text(*value) != value_) return false;
  return ctx.rng.bernoulli(probability_);
}

std::shared_ptr<const Compartment> make_compartment(const config::CompartmentSpec& spec) {
  if (const auto* s = std::get_if<config::NodeStochasticSpec>(&spec))
    return std::make_shared<NodeStochastic>(s->ratio, s->triggering_status);
  if (const auto* c = std::get_if<config::CountDownSpec>(&spec)) {
    if (c->iteration_count < 1) throw ConfigError("count-down iteration-count must be at least 1");
    return std::make_shared<CountDown>(c->name, c->iteration_count);
  }
  const auto& n = std::get<config::NodeCategoricalSpec>(spec);
  return std::make_shared<NodeCategorical>(n.attribute, n.value, n.probability);
}

}  // namespace crowdkit::rules
