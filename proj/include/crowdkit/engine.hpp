#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdkit/attributes.hpp"
#include "crowdkit/collect.hpp"
#include "crowdkit/config.hpp"
#include "crowdkit/graph.hpp"
#include "crowdkit/graph_io.hpp"
#include "crowdkit/random.hpp"
#include "crowdkit/rules.hpp"

namespace crowdkit::engine {

using collect::CollectorValue;
using HookResult = std::optional<CollectorValue>;

// Mutable state of one run, handed to every hook.
class SimContext {
 public:
  SimContext(Graph graph, NodeLabels states, AttributeTable attrs, ParamMap net_params,
             std::vector<std::string> type_names, Rng rng);

  Graph& graph() noexcept { return graph_; }
  const Graph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.node_count(); }

  const NodeLabels& states() const noexcept { return states_; }
  const std::string& state(NodeId v) const { return states_[v]; }
  // Changes the type of v and keeps node_count() in step.
  // Throws std::invalid_argument for an undeclared type.
  void set_type(NodeId v, std::string_view type);

  // Histogram of states over the declared types (zeros included).
  const std::map<std::string, std::size_t, std::less<>>& node_count() const noexcept { return counts_; }
  std::size_t count(std::string_view type) const;
  const std::vector<std::string>& type_names() const noexcept { return type_names_; }

  // Nodes that entered each type during the previous iteration.
  std::size_t entered_previous(std::string_view type) const;
  // Nodes that entered each type so far in the current iteration.
  std::size_t entered_current(std::string_view type) const;

  AttributeTable& attrs() noexcept { return attrs_; }
  const AttributeTable& attrs() const noexcept { return attrs_; }

  ParamMap& net_params() noexcept { return params_; }
  const ParamMap& net_params() const noexcept { return params_; }
  const AttributeValue* param(std::string_view key) const;
  // Numeric network parameter, or `fallback` when absent. Throws
  // std::invalid_argument when the parameter is a category.
  double number_param(std::string_view key, double fallback) const;

  long iteration() const noexcept { return iteration_; }
  Rng& rng() noexcept { return rng_; }

  // Adds then removes edges; duplicates and missing edges are ignored.
  // Values stored on removed edges are dropped. Throws std::invalid_argument
  // on unknown endpoints or self-loops, before changing anything.
  void mutate_edges(std::span<const Edge> add, std::span<const Edge> remove);

  // Engine side.
  void begin_iteration(long iteration);

 private:
  Graph graph_;
  NodeLabels states_;
  AttributeTable attrs_;
  ParamMap params_;
  std::vector<std::string> type_names_;
  std::map<std::string, std::size_t, std::less<>> counts_;
  std::map<std::string, std::size_t, std::less<>> entered_now_;
  std::map<std::string, std::size_t, std::less<>> entered_prev_;
  long iteration_ = 0;
  Rng rng_;
};

// Uniform random permutation of the node ids from the run RNG.
std::vector<NodeId> shuffle_agents(SimContext& ctx);

using ContextHook = std::function<HookResult(SimContext&)>;
using AgentHook = std::function<void(SimContext&, NodeId)>;
using SetupHook = std::function<void(SimContext&)>;

template <class F>
struct Named {
  std::string name;
  F fn;
  bool include_initial = false;  // after-iteration hooks: also record at iteration 0
};

// Hooks by lifecycle phase, each list in registration order.
// setup: once, after population init and before iteration 0 is recorded.
// before / agent / after: every iteration. after_simulation: once at the end.
// Names must be unique across phases (they name the output files);
// "node_counts" is reserved for the built-in collector.
class HookRegistry {
 public:
  HookRegistry& on_setup(std::string name, SetupHook fn);
  HookRegistry& before_iteration(std::string name, ContextHook fn);
  HookRegistry& every_agent(std::string name, AgentHook fn);
  HookRegistry& after_iteration(std::string name, ContextHook fn, bool include_initial = false);
  HookRegistry& after_simulation(std::string name, ContextHook fn);

  const std::vector<Named<SetupHook>>& setup() const noexcept { return setup_; }
  const std::vector<Named<ContextHook>>& before() const noexcept { return before_; }
  const std::vector<Named<AgentHook>>& agent() const noexcept { return agent_; }
  const std::vector<Named<ContextHook>>& after() const noexcept { return after_; }
  const std::vector<Named<ContextHook>>& finish() const noexcept { return finish_; }

 private:
  void claim(const std::string& name);
  std::vector<std::string> names_;
  std::vector<Named<SetupHook>> setup_;
  std::vector<Named<ContextHook>> before_;
  std::vector<Named<AgentHook>> agent_;
  std::vector<Named<ContextHook>> after_;
  std::vector<Named<ContextHook>> finish_;
};

// Builds a fresh registry per run so that stateful hooks are never shared.
using HookFactory = std::function<HookRegistry()>;

inline constexpr std::string_view node_counts_name = "node_counts";

struct RunSettings {
  std::size_t epochs = 1;
  std::size_t snapshot_period = 1;
  std::uint64_t curr_batch = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t sweep_index = 0;
  std::string sim_name = "sim";
  bool write_snapshots = true;
  unsigned threads = 0;  // batch/sweep parallelism; 0 = hardware concurrency

  std::uint64_t run_seed() const noexcept { return derive_seed(master_seed, curr_batch, sweep_index); }
  // Throws ConfigError on epochs < 1 or a period outside [1, epochs].
  void check() const;
};

// One run held in memory.
class Simulation {
 public:
  // Relative file paths in the config resolve against `base_dir`.
  Simulation(config::ProjectConfig config, RunSettings settings, HookRegistry hooks,
             std::filesystem::path base_dir = {});

  // Builds the graph and population, runs setup hooks, records iteration 0.
  void initialize();
  // One full iteration; initialize() must have run.
  void step();
  // initialize() if needed, the remaining epochs, then after-simulation hooks.
  void run();

  bool initialized() const noexcept { return ctx_.has_value(); }
  SimContext& context() { return *ctx_; }
  const config::ProjectConfig& config() const noexcept { return config_; }
  const RunSettings& settings() const noexcept { return settings_; }

  const std::map<std::string, collect::CollectorSeries>& collectors() const noexcept { return series_; }
  const std::map<std::string, CollectorValue>& summary() const noexcept { return summary_; }

  // Called at iteration 0 and whenever iteration % snapshot_period == 0.
  std::function<void(const collect::SnapshotRecord&)> on_snapshot;
  // Called right after on_snapshot, with the collectors so far.
  std::function<void(const Simulation&)> on_flush;

 private:
  void record(const std::string& name, const HookResult& value);
  void snapshot();

  config::ProjectConfig config_;
  RunSettings settings_;
  HookRegistry hooks_;
  std::filesystem::path base_dir_;
  std::optional<SimContext> ctx_;
  rules::RuleSet rules_;
  rules::CountdownLedger ledger_;
  bool diffusion_ = false;
  std::map<std::string, collect::CollectorSeries> series_;
  std::map<std::string, CollectorValue> summary_;
};

// ---- projects and on-disk runs ------------------------------------------------

// <root>/config.yaml holds the configuration, <root>/project.json the name
// and the directory relative config paths resolve against.
class Project {
 public:
  static Project create(const std::filesystem::path& root, const config::ProjectConfig& config,
                        const std::filesystem::path& source_dir = {});
  static Project open(const std::filesystem::path& root);

  const std::string& name() const noexcept { return config_.name; }
  const std::filesystem::path& root() const noexcept { return root_; }
  const config::ProjectConfig& config() const noexcept { return config_; }
  const std::filesystem::path& source_dir() const noexcept { return source_dir_; }
  // Every directory below root that holds a run-meta.json, sorted.
  std::vector<std::filesystem::path> simulations() const;

 private:
  std::filesystem::path root_;
  config::ProjectConfig config_;
  std::filesystem::path source_dir_;
};

// $CROWDKIT_HOME, else ~/.crowdkit, else ./.crowdkit
std::filesystem::path default_home();

struct RunOutcome {
  std::filesystem::path dir;
  std::uint64_t batch = 0;
  std::uint64_t sweep_index = 0;
  bool ok = true;
  // failure came from the configuration or its input files, not the run itself
  bool input_error = false;
  std::string error;
};

// Runs one configuration into `dir`: config.yaml, snapshots/, collectors/,
// summary.json (when after-simulation hooks exist) and run-meta.json.
// On a hook failure partial collectors are kept, run-meta records the error
// and the exception propagates.
void run_into(const config::ProjectConfig& config, const std::filesystem::path& base_dir, const RunSettings& settings,
              HookRegistry hooks, const std::filesystem::path& dir);

// <project>/<sim_name>/batch-<curr_batch>/
std::filesystem::path run_simulation(const Project& project, const RunSettings& settings, HookRegistry hooks);

// Batches 0..n-1 under <project>/<sim_name>/; a failing batch is recorded and
// the others still run.
std::vector<RunOutcome> batch_run(const Project& project, const RunSettings& settings, const HookFactory& hooks,
                                  std::size_t n_batches);

// One group per sweep value under <project>/<sim_name>/<param=value>/, each
// with n_batches batches. Throws ConfigError when there is no sweep section.
std::vector<RunOutcome> sweep_run(const Project& project, const RunSettings& settings, const HookFactory& hooks,
                                  std::size_t n_batches = 1);

}  // namespace crowdkit::engine
