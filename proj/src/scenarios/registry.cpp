#include "crowdkit/fixtures.hpp"
#include "crowdkit/scenarios.hpp"

namespace crowdkit::scenarios {

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> list = {
      {"sir", "SIR epidemic on a random-regular graph; records get_percentage_infected", fixtures::sir_yaml,
       [] { return sir_hooks(); }},
      {"infmax", "independent cascade from top-k centrality seeds; records total_active", fixtures::infmax_yaml,
       [] { return ic_hooks(); }},
      {"trust", "networked trust game with proportional imitation; records global_payoff", fixtures::trust_yaml,
       [] { return trust_hooks(); }},
      {"gabm", "SIR with rule-based stay-home decisions driving a node-categorical infection rule",
       fixtures::gabm_yaml, [] { return stayhome_hooks(); }},
  };
  return list;
}

const Scenario* find_scenario(std::string_view name) {
  for (const auto& s : all_scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace crowdkit::scenarios
