#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crowdkit/scenarios.hpp"

namespace crowdkit::scenarios {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double stay_home_probability(double f, const StayHomeParams& p) {
  f = std::clamp(f, 0.0, 1.0);
  const double lo = sigmoid(-p.slope * p.midpoint);
  const double hi = sigmoid(p.slope * (1.0 - p.midpoint));
  const double g = hi > lo ? (sigmoid(p.slope * (f - p.midpoint)) - lo) / (hi - lo) : (f > p.midpoint ? 1.0 : 0.0);
  return std::clamp(p.baseline + (1.0 - p.baseline) * g, 0.0, 1.0);
}

HookRegistry stayhome_hooks() {
  HookRegistry hooks;
  hooks.every_agent("stayhome_decider", [](SimContext& ctx, NodeId v) {
    const auto* loc = ctx.attrs().node(v, "location");
    if (!loc) throw std::runtime_error("node " + std::to_string(v) + " has no 'location' attribute");
    StayHomeParams p;
    p.slope = ctx.number_param("slope", p.slope);
    p.midpoint = ctx.number_param("midpoint", p.midpoint);
    p.baseline = ctx.number_param("baseline", p.baseline);
    const double f = ctx.size() ? static_cast<double>(ctx.entered_previous("Infected")) / static_cast<double>(ctx.size()) : 0.0;
    const bool home = ctx.rng().bernoulli(stay_home_probability(f, p));
    ctx.attrs().set_node(v, "location", std::string(home ? "home" : "grid"));
  });
  hooks.after_iteration("get_percentage_infected",
                        [](SimContext& ctx) -> engine::HookResult { return percentage_infected(ctx); });
  hooks.after_iteration("new_cases", [](SimContext& ctx) -> engine::HookResult {
    return static_cast<double>(ctx.entered_current("Infected"));
  });
  return hooks;
}

}  // namespace crowdkit::scenarios
