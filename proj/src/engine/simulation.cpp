#include "crowdkit/errors.hpp"
#include "crowdkit/engine.hpp"
#include "crowdkit/population.hpp"

namespace crowdkit::engine {

void RunSettings::check() const {
  if (epochs < 1) throw ConfigError("epochs", "must be at least 1");
  if (snapshot_period < 1 || snapshot_period > epochs)
    throw ConfigError("snapshot_period", "must lie in [1, epochs]");
}

namespace {

template <class F>
auto guarded(const std::string& name, long iteration, F&& f) {
  try {
    return f();
  } catch (const HookError&) {
    throw;
  } catch (const std::exception& e) {
    throw HookError(name, iteration, e.what());
  }
}

}  // namespace

Simulation::Simulation(config::ProjectConfig config, RunSettings settings, HookRegistry hooks,
                       std::filesystem::path base_dir)
    : config_(std::move(config)), settings_(std::move(settings)), hooks_(std::move(hooks)), base_dir_(std::move(base_dir)) {}

void Simulation::initialize() {
  if (ctx_) return;
  settings_.check();
  Rng rng(settings_.run_seed());
  Graph graph = config::build_structure(config_, rng, base_dir_);
  if (auto violations = config::validate(config_, graph.node_count()); !violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  auto pop = config::initialize_population(config_, graph, rng, base_dir_);
  diffusion_ = config_.definitions.model_kind == config::ModelKind::diffusion;
  if (diffusion_) rules_ = rules::RuleSet::from_config(config_.definitions);
  ctx_.emplace(std::move(graph), std::move(pop.states), std::move(pop.attrs), std::move(pop.net_params),
               config_.type_names(), std::move(rng));

  // every per-iteration hook gets a file, even if it never returns a value
  series_.emplace(std::string(node_counts_name), collect::CollectorSeries(std::string(node_counts_name)));
  for (const auto& h : hooks_.before()) series_.emplace(h.name, collect::CollectorSeries(h.name));
  for (const auto& h : hooks_.after()) series_.emplace(h.name, collect::CollectorSeries(h.name));

  auto& ctx = *ctx_;
  ctx.begin_iteration(0);
  for (const auto& h : hooks_.setup()) guarded(h.name, 0, [&] { h.fn(ctx); });
  for (const auto& h : hooks_.after())
    if (h.include_initial) record(h.name, guarded(h.name, 0, [&] { return h.fn(ctx); }));
  record(std::string(node_counts_name), CollectorValue(collect::FlatMap(ctx.node_count().begin(), ctx.node_count().end())));
  snapshot();
}

void Simulation::record(const std::string& name, const HookResult& value) {
  if (!value) return;
  series_[name].record(ctx_->iteration(), *value);
}

void Simulation::snapshot() {
  if (settings_.write_snapshots && on_snapshot) {
    const auto& ctx = *ctx_;
    on_snapshot(collect::SnapshotRecord{ctx.iteration(), ctx.graph(), ctx.states(), ctx.attrs(), ctx.net_params()});
  }
  if (on_flush) on_flush(*this);
}

void Simulation::step() {
  if (!ctx_) throw std::logic_error("Simulation::step before initialize");
  auto& ctx = *ctx_;
  const long it = ctx.iteration() + 1;
  ctx.begin_iteration(it);

  for (const auto& h : hooks_.before()) record(h.name, guarded(h.name, it, [&] { return h.fn(ctx); }));

  if (!hooks_.agent().empty()) {
    for (NodeId v : shuffle_agents(ctx))
      for (const auto& h : hooks_.agent()) guarded(h.name, it, [&] { h.fn(ctx, v); });
  }

  if (diffusion_ && !rules_.empty()) {
    const rules::FrozenView view{ctx.graph(), ctx.states(), ctx.attrs()};
    const auto transitions = rules::apply_rules(view, rules_, ledger_, ctx.rng());
    for (const auto& [v, type] : transitions) ctx.set_type(v, type);
  }

  for (const auto& h : hooks_.after()) record(h.name, guarded(h.name, it, [&] { return h.fn(ctx); }));
  record(std::string(node_counts_name), CollectorValue(collect::FlatMap(ctx.node_count().begin(), ctx.node_count().end())));

  if (static_cast<std::size_t>(it) % settings_.snapshot_period == 0) snapshot();
}

void Simulation::run() {
  initialize();
  auto& ctx = *ctx_;
  while (static_cast<std::size_t>(ctx.iteration()) < settings_.epochs) step();
  const long it = ctx.iteration();
  for (const auto& h : hooks_.finish()) {
    auto value = guarded(h.name, it, [&] { return h.fn(ctx); });
    if (value) summary_[h.name] = std::move(*value);
  }
}

}  // namespace crowdkit::engine
