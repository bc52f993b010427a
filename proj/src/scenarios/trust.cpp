#include <algorithm>
#include <memory>
#include <numeric>

#include "crowdkit/scenarios.hpp"

namespace crowdkit::scenarios {

TrustParams trust_params(const SimContext& ctx) {
  TrustParams p;
  p.R_T = ctx.number_param("R_T", p.R_T);
  p.r_UT = ctx.number_param("r_UT", p.r_UT);
  p.tv = ctx.number_param("tv", p.tv);
  return p;
}

std::vector<double> default_trust_payoffs(const SimContext& ctx) {
  const auto& g = ctx.graph();
  const auto& s = ctx.states();
  const auto p = trust_params(ctx);
  const auto n = static_cast<NodeId>(g.node_count());
  std::vector<double> pay(n, 0.0);
  std::vector<double> received(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (s[v] != "I") continue;
    std::size_t k_t = 0, k_u = 0;
    for (NodeId w : g.neighbors(v)) {
      k_t += s[w] == "T";
      k_u += s[w] == "U";
    }
    const auto k = k_t + k_u;
    if (k == 0) continue;
    pay[v] = p.tv * ((p.R_T / 2.0) * static_cast<double>(k_t) / static_cast<double>(k) - 1.0);
    const double share = p.tv / static_cast<double>(k);
    for (NodeId w : g.neighbors(v))
      if (s[w] == "T" || s[w] == "U") received[w] += share;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (s[v] == "T")
      pay[v] = (p.R_T / 2.0) * received[v];
    else if (s[v] == "U")
      pay[v] = p.R_U() * received[v];
  }
  return pay;
}

double imitation_probability(double payoff_v, double payoff_w, double phi_min, double phi_max) {
  if (!(payoff_w > payoff_v) || !(phi_max > phi_min)) return 0.0;
  return std::clamp((payoff_w - payoff_v) / (phi_max - phi_min), 0.0, 1.0);
}

namespace {

struct TrustState {
  PayoffModel model;
  std::vector<double> payoff;
  double phi_min = 0;
  double phi_max = 0;
  double total = 0;
};

void refresh(TrustState& st, SimContext& ctx, bool initial) {
  auto next = st.model(ctx);
  if (next.size() != ctx.size()) throw std::runtime_error("payoff model returned the wrong number of values");
  auto& attrs = ctx.attrs();
  for (NodeId v = 0; v < next.size(); ++v) {
    attrs.set_node(v, "previous_payoff", initial ? next[v] : st.payoff[v]);
    attrs.set_node(v, "current_payoff", next[v]);
  }
  st.payoff = std::move(next);
  st.total = std::accumulate(st.payoff.begin(), st.payoff.end(), 0.0);
}

}  // namespace

HookRegistry trust_hooks(PayoffModel model) {
  auto st = std::make_shared<TrustState>();
  st->model = std::move(model);
  HookRegistry hooks;
  hooks.on_setup("trust_initialize", [st](SimContext& ctx) {
    const auto p = trust_params(ctx);
    const double n = static_cast<double>(ctx.size());
    const double k_avg = n > 0 ? 2.0 * static_cast<double>(ctx.graph().edge_count()) / n : 0.0;
    st->phi_max = 2.0 * p.R_T * k_avg;
    st->phi_min = -p.tv;
    auto& params = ctx.net_params();
    params["R_U"] = p.R_U();
    params["phi_min"] = st->phi_min;
    params["phi_max"] = st->phi_max;
    ctx.attrs().declare_node_key("current_payoff", ValueKind::number);
    ctx.attrs().declare_node_key("previous_payoff", ValueKind::number);
    refresh(*st, ctx, true);
  });
  hooks.every_agent("trust_imitate", [st](SimContext& ctx, NodeId v) {
    const auto nbrs = ctx.graph().neighbors(v);
    if (nbrs.empty()) return;
    const NodeId w = nbrs[ctx.rng().below(nbrs.size())];
    const double prob = imitation_probability(st->payoff[v], st->payoff[w], st->phi_min, st->phi_max);
    if (prob > 0 && ctx.rng().bernoulli(prob)) ctx.set_type(v, ctx.state(w));
  });
  hooks.after_iteration("global_payoff", [st](SimContext& ctx) -> engine::HookResult {
    refresh(*st, ctx, false);
    return st->total;
  });
  hooks.after_simulation("trust_summary", [st](SimContext& ctx) -> engine::HookResult {
    collect::FlatMap out;
    out["r_UT"] = trust_params(ctx).r_UT;
    out["count_I"] = static_cast<double>(ctx.count("I"));
    out["count_T"] = static_cast<double>(ctx.count("T"));
    out["count_U"] = static_cast<double>(ctx.count("U"));
    out["final_global_payoff"] = st->total;
    return out;
  });
  return hooks;
}

}  // namespace crowdkit::scenarios
