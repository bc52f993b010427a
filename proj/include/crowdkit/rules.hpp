#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crowdkit/attributes.hpp"
#include "crowdkit/config.hpp"
#include "crowdkit/graph.hpp"
#include "crowdkit/graph_io.hpp"
#include "crowdkit/random.hpp"

namespace crowdkit::rules {

// Iteration-start state. Compartments read only through this view.
struct FrozenView {
  const Graph& graph;
  const NodeLabels& states;
  const AttributeTable& attrs;
};

// Countdown counters keyed by (node, countdown name). Each entry remembers the
// node type it was created under; an entry whose node has since left that
// type is stale and gets dropped.
class CountdownLedger {
 public:
  struct Entry {
    std::string from_type;
    std::size_t remaining = 0;
  };

  const Entry* find(NodeId v, std::string_view name) const;
  void set(NodeId v, std::string_view name, std::string from_type, std::size_t remaining);
  void erase(NodeId v, std::string_view name);
  void erase_node(NodeId v);
  // Drops entries whose node no longer holds the entry's type.
  void prune(const NodeLabels& states);
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::pair<NodeId, std::string>, Entry> entries_;
};

struct EvalContext {
  NodeId node;
  std::string_view from_type;
  const FrozenView& view;
  CountdownLedger& ledger;
  Rng& rng;
};

// A rule bit deciding whether a node leaves its type this iteration.
// Implementations must read node state only through ctx.view so that all
// evaluations within an iteration see the same frozen state.
class Compartment {
 public:
  virtual ~Compartment() = default;
  virtual bool evaluate(const EvalContext& ctx) const = 0;
  virtual std::string_view kind() const noexcept = 0;
};

// Eligible when no trigger is set or some neighbor (predecessor on directed
// graphs) holds the trigger type; then one Bernoulli(ratio) draw.
class NodeStochastic final : public Compartment {
 public:
  NodeStochastic(double ratio, std::optional<std::string> triggering_status);
  bool evaluate(const EvalContext& ctx) const override;
  std::string_view kind() const noexcept override { return "node-stochastic"; }

 private:
  double ratio_;
  std::optional<std::string> trigger_;
};

// Fires exactly `iteration_count` evaluations after the first one: the first
// evaluation creates the counter at iteration_count and counts it down once,
// so with entry at iteration t the node fires at t + iteration_count.
class CountDown final : public Compartment {
 public:
  CountDown(std::string name, std::size_t iteration_count);
  bool evaluate(const EvalContext& ctx) const override;
  std::string_view kind() const noexcept override { return "count-down"; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  std::size_t count_;
};

// Eligible when the node's attribute equals `value`; then Bernoulli(probability).
// A node without the attribute is never eligible (reported once per instance).
class NodeCategorical final : public Compartment {
 public:
  NodeCategorical(std::string attribute, std::string value, double probability);
  bool evaluate(const EvalContext& ctx) const override;
  std::string_view kind() const noexcept override { return "node-categorical"; }

 private:
  std::string attribute_;
  std::string value_;
  double probability_;
  mutable std::atomic<bool> warned_{false};
};

std::shared_ptr<const Compartment> make_compartment(const config::CompartmentSpec& spec);

struct Rule {
  std::string id;
  std::string from_type;
  std::string to_type;
  std::string compartment_id;
  std::shared_ptr<const Compartment> compartment;
};

class RuleSet {
 public:
  RuleSet() = default;
  // Rules in declaration order with their compartments instantiated.
  static RuleSet from_config(const config::DefinitionsSpec& defs);

  // Custom compartments enter here.
  void add(Rule rule) { rules_.push_back(std::move(rule)); }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  bool empty() const noexcept { return rules_.empty(); }

 private:
  std::vector<Rule> rules_;
};

using Transition = std::pair<NodeId, std::string>;

// One synchronous step. Nodes are visited in ascending id; for each, the rules
// whose from_type is the node's frozen type are tried in order and the first
// that fires decides the new type. Returns the transitions (ascending id);
// applying them is up to the caller. Ledger entries of transitioning nodes
// are cleared.
std::vector<Transition> apply_rules(const FrozenView& view, const RuleSet& rules, CountdownLedger& ledger, Rng& rng);

}  // namespace crowdkit::rules
