#include "crowdkit/errors.hpp"
#include "crowdkit/rules.hpp"

namespace crowdkit::rules {

RuleSet RuleSet::from_config(const config::DefinitionsSpec& defs) {
  std::map<std::string, std::shared_ptr<const Compartment>> comps;
  for (const auto& [id, spec] : defs.compartments) comps[id] = make_compartment(spec);
  RuleSet set;
  for (const auto& [id, spec] : defs.rules) {
    auto it = comps.find(spec.compartment);
    if (it == comps.end())
      throw ConfigError("definitions." + defs.model_key + ".rules." + id,
                        "dangling reference to compartment '" + spec.compartment + "'");
    set.add(Rule{id, spec.from_type, spec.to_type, spec.compartment, it->second});
  }
  return set;
}

std::vector<Transition> apply_rules(const FrozenView& view, const RuleSet& rules, CountdownLedger& ledger, Rng& rng) {
  // drop counters of nodes moved by something other than a rule
  ledger.prune(view.states);

  std::map<std::string_view, std::vector<const Rule*>> by_type;
  for (const auto& r : rules.rules()) by_type[r.from_type].push_back(&r);

  std::vector<Transition> out;
  const auto n = static_cast<NodeId>(view.graph.node_count());
  for (NodeId v = 0; v < n; ++v) {
    auto it = by_type.find(view.states[v]);
    if (it == by_type.end()) continue;
    for (const Rule* r : it->second) {
      EvalContext ctx{v, r->from_type, view, ledger, rng};
      if (r->compartment->evaluate(ctx)) {
        out.emplace_back(v, r->to_type);
        break;
      }
    }
  }
  for (const auto& [v, _] : out) ledger.erase_node(v);
  return out;
}

}  // namespace crowdkit::rules
