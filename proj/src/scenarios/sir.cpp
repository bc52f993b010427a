#include "crowdkit/scenarios.hpp"

namespace crowdkit::scenarios {

double percentage_infected(const SimContext& ctx, std::string_view infected) {
  if (ctx.size() == 0) return 0.0;
  return 100.0 * static_cast<double>(ctx.count(infected)) / static_cast<double>(ctx.size());
}

HookRegistry sir_hooks() {
  HookRegistry hooks;
  hooks.after_iteration("get_percentage_infected",
                        [](SimContext& ctx) -> engine::HookResult { return percentage_infected(ctx); });
  return hooks;
}

}  // namespace crowdkit::scenarios
