#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crowdkit/engine.hpp"

namespace crowdkit::scenarios {

using engine::HookRegistry;
using engine::SimContext;

// ---- SIR --------------------------------------------------------------------

// 100 * count(infected) / n
double percentage_infected(const SimContext& ctx, std::string_view infected = "Infected");
// after_iteration "get_percentage_infected"
HookRegistry sir_hooks();

// ---- independent cascade --------------------------------------------------------

inline constexpr std::string_view ic_spreader = "Active_Spreader";
inline constexpr std::string_view ic_active = "Active";
inline constexpr std::string_view ic_inactive = "Inactive";
inline constexpr std::string_view influence_key = "influence_prob";

// single: one uniform draw per inactive node and iteration, compared with
// every spreader edge. per_edge: one Bernoulli draw per spreader edge.
enum class DrawMode { single, per_edge };

// influence_prob(u -> v) = 1 / in_degree(v), stored under both orientations
// of every undirected edge.
void ic_initialize(SimContext& ctx);
double ic_total_active(const SimContext& ctx);

// setup ic_initialize, before ic_freeze, agent ic_agent_step,
// after total_active (also at iteration 0). The draw mode is read from the
// network parameter "draw-mode" (single | per-edge) unless given here.
HookRegistry ic_hooks(std::optional<DrawMode> mode = std::nullopt);

// ---- trust game ---------------------------------------------------------------

// Payoff of every node from the current strategies; injectable.
using PayoffModel = std::function<std::vector<double>(const SimContext&)>;

struct TrustParams {
  double R_T = 6.0;
  double r_UT = 0.5;
  double tv = 1.0;
  double R_U() const noexcept { return 2.0 * r_UT * R_T; }
};

TrustParams trust_params(const SimContext& ctx);

// Investors split tv over their trustee neighbors; trustworthy trustees return
// half of R_T times what they receive, untrustworthy ones keep R_U times it.
std::vector<double> default_trust_payoffs(const SimContext& ctx);

// clamp((payoff_w - payoff_v) / (phi_max - phi_min), 0, 1) when w is better, else 0
double imitation_probability(double payoff_v, double payoff_w, double phi_min, double phi_max);

// setup trust_initialize, agent trust_imitate, after global_payoff,
// after-simulation trust_summary.
HookRegistry trust_hooks(PayoffModel model = default_trust_payoffs);

// ---- stay-home decisions --------------------------------------------------------

struct StayHomeParams {
  double slope = 10.0;
  double midpoint = 0.05;
  double baseline = 0.0;
};

// Probability of staying home at case fraction f in [0, 1]: a logistic curve
// rescaled so that it is exactly 0 at f = 0 and 1 at f = 1, lifted by baseline.
double stay_home_probability(double case_fraction, const StayHomeParams& p);

// agent stayhome_decider (sets location to home or grid from yesterday's new
// infections), after get_percentage_infected and new_cases.
HookRegistry stayhome_hooks();

// ---- registry ---------------------------------------------------------------------

struct Scenario {
  std::string name;
  std::string description;
  std::string_view fixture;  // YAML text of the bundled config
  engine::HookFactory hooks;
};

const std::vector<Scenario>& all_scenarios();
const Scenario* find_scenario(std::string_view name);

}  // namespace crowdkit::scenarios
