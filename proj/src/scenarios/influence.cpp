#include <memory>
#include <stdexcept>

#include "crowdkit/scenarios.hpp"

namespace crowdkit::scenarios {

void ic_initialize(SimContext& ctx) {
  const auto& g = ctx.graph();
  auto& attrs = ctx.attrs();
  attrs.declare_edge_key(influence_key, ValueKind::number);
  for (const auto& e : g.edges()) {
    attrs.set_edge(e, influence_key, 1.0 / static_cast<double>(g.in_degree(e.target)));
    if (!g.directed()) attrs.set_edge({e.target, e.source}, influence_key, 1.0 / static_cast<double>(g.degree(e.source)));
  }
}

double ic_total_active(const SimContext& ctx) {
  return static_cast<double>(ctx.count(ic_active) + ctx.count(ic_spreader));
}

namespace {

enum Code : std::uint8_t { inactive, spreader, active, other };

struct IcState {
  std::optional<DrawMode> fixed_mode;
  DrawMode mode = DrawMode::single;
  std::vector<std::uint8_t> frozen;
};

DrawMode mode_from(const SimContext& ctx) {
  const auto* v = ctx.param("draw-mode");
  if (!v) return DrawMode::single;
  const auto text = to_text(*v);
  if (text == "single") return DrawMode::single;
  if (text == "per-edge") return DrawMode::per_edge;
  throw std::invalid_argument("draw-mode must be 'single' or 'per-edge', got '" + text + "'");
}

double influence(const SimContext& ctx, NodeId from, NodeId to) {
  const auto* p = ctx.attrs().edge({from, to}, influence_key, !ctx.graph().directed());
  if (!p) throw std::runtime_error("edge (" + std::to_string(from) + ", " + std::to_string(to) + ") has no influence_prob");
  return *as_number(*p);
}

}  // namespace

HookRegistry ic_hooks(std::optional<DrawMode> mode) {
  auto state = std::make_shared<IcState>();
  state->fixed_mode = mode;
  HookRegistry hooks;
  hooks.on_setup("ic_initialize", [state](SimContext& ctx) {
    state->mode = state->fixed_mode ? *state->fixed_mode : mode_from(ctx);
    ic_initialize(ctx);
  });
  hooks.before_iteration("ic_freeze", [state](SimContext& ctx) -> engine::HookResult {
    const auto& s = ctx.states();
    state->frozen.resize(s.size());
    for (std::size_t v = 0; v < s.size(); ++v)
      state->frozen[v] = s[v] == ic_inactive ? inactive : s[v] == ic_spreader ? spreader : s[v] == ic_active ? active : other;
    return std::nullopt;
  });
  hooks.every_agent("ic_agent_step", [state](SimContext& ctx, NodeId v) {
    const auto& frozen = state->frozen;
    if (frozen[v] == spreader) {
      // one chance to spread, then inert
      ctx.set_type(v, ic_active);
      return;
    }
    if (frozen[v] != inactive) return;
    const auto preds = ctx.graph().predecessors(v);
    if (state->mode == DrawMode::single) {
      bool has_spreader = false;
      for (NodeId u : preds) has_spreader = has_spreader || frozen[u] == spreader;
      if (!has_spreader) return;
      const double draw = ctx.rng().uniform();
      for (NodeId u : preds) {
        if (frozen[u] == spreader && influence(ctx, u, v) >= draw) {
          ctx.set_type(v, ic_spreader);
          return;
        }
      }
    } else {
      for (NodeId u : preds) {
        if (frozen[u] == spreader && ctx.rng().bernoulli(influence(ctx, u, v))) {
          ctx.set_type(v, ic_spreader);
          return;
        }
      }
    }
  });
  hooks.after_iteration(
      "total_active", [](SimContext& ctx) -> engine::HookResult { return ic_total_active(ctx); }, true);
  return hooks;
}

}  // namespace crowdkit::scenarios
