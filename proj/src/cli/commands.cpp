#include <algorithm>
#include <fstream>
#include <set>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "crowdkit/cli.hpp"
#include "crowdkit/collect.hpp"
#include "crowdkit/engine.hpp"
#include "crowdkit/errors.hpp"
#include "crowdkit/scenarios.hpp"
#include "json.hpp"

namespace crowdkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ParseError means bad input during run/inspect (exit 2) but bad data
// during merge/chart (exit 4).
int guarded(std::ostream& err, int parse_code, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_code;
  } catch (const MergeError& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  } catch (const HookError& e) {
    err << "error: " << e.what() << "\n";
    return runtime_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return runtime_error;
  }
}

struct RunArgs {
  std::string config_path;
  std::string scenario;
  std::string project;
  std::string home;
  std::string sim = "sim";
  std::string data_dir;
  std::size_t epochs = 50;
  std::size_t snapshot = 0;
  std::size_t batches = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool no_snapshots = false;
  bool merge = false;
};

void add_run_flags(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config", a.config_path, "YAML configuration file");
  cmd->add_option("--scenario", a.scenario, "built-in scenario (hooks, and its fixture config when --config is absent)");
  cmd->add_option("--project", a.project, "project name under the home directory (default: the config name)");
  cmd->add_option("--home", a.home, "project home (default: $CROWDKIT_HOME or ~/.crowdkit)");
  cmd->add_option("--sim", a.sim, "simulation name (directory under the project)");
  cmd->add_option("--data-dir", a.data_dir, "directory relative structure paths resolve against (default: cwd)");
  cmd->add_option("--epochs", a.epochs, "iterations to run")->check(CLI::PositiveNumber);
  cmd->add_option("--snapshot", a.snapshot, "snapshot period (default: epochs)");
  cmd->add_option("--batches", a.batches, "independent repetitions")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "master seed");
  cmd->add_option("--threads", a.threads, "parallel runs (0 = all cores)");
  cmd->add_flag("--no-snapshots", a.no_snapshots, "skip graph snapshots");
  cmd->add_flag("--merge", a.merge, "average the batches afterwards (merge in parent directory)");
}

fs::path home_of(const std::string& flag) { return flag.empty() ? engine::default_home() : fs::path(flag); }

const scenarios::Scenario* scenario_or_throw(const std::string& name) {
  if (name.empty()) return nullptr;
  const auto* s = scenarios::find_scenario(name);
  if (!s) {
    std::string known;
    for (const auto& x : scenarios::all_scenarios()) known += (known.empty() ? "" : ", ") + x.name;
    throw ConfigError("--scenario", "unknown scenario '" + name + "' (known: " + known + ")");
  }
  return s;
}

// Creates (or refreshes) the project a run command works on.
engine::Project project_for(const RunArgs& a, const scenarios::Scenario* scenario) {
  const auto home = home_of(a.home);
  const fs::path source_dir = a.data_dir.empty() ? fs::current_path() : fs::absolute(a.data_dir);
  std::optional<config::ProjectConfig> cfg;
  if (!a.config_path.empty()) {
    if (!fs::exists(a.config_path)) throw ConfigError("--config", "file not found: " + a.config_path);
    cfg = config::load_config(a.config_path);
  } else if (scenario && a.project.empty()) {
    cfg = config::parse_config(scenario->fixture);
  }
  if (!cfg) {
    if (a.project.empty()) throw ConfigError("", "one of --config, --scenario or --project is required");
    const auto root = home / a.project;
    if (!fs::exists(root / "project.json")) throw ConfigError("--project", "no project at " + root.string());
    return engine::Project::open(root);
  }
  return engine::Project::create(home / (a.project.empty() ? cfg->name : a.project), *cfg, source_dir);
}

engine::RunSettings settings_for(const RunArgs& a) {
  engine::RunSettings s;
  s.epochs = a.epochs;
  s.snapshot_period = a.snapshot == 0 ? a.epochs : a.snapshot;
  s.master_seed = a.seed;
  s.sim_name = a.sim;
  s.threads = a.threads;
  s.write_snapshots = !a.no_snapshots;
  s.check();
  return s;
}

int report(const std::vector<engine::RunOutcome>& outcomes, std::ostream& out, std::ostream& err) {
  int failed = 0;
  for (const auto& o : outcomes) {
    if (o.ok) {
      out << o.dir.string() << "\n";
    } else {
      ++failed;
      err << "error: " << o.dir.string() << ": " << o.error << "\n";
    }
  }
  return failed ? runtime_error : ok;
}

int merge_groups(const std::set<fs::path>& groups, std::ostream& out) {
  for (const auto& g : groups)
    for (const auto& p : collect::merge_parent_directory(g)) out << p.string() << "\n";
  return ok;
}

int cmd_run(const RunArgs& a, bool sweep, std::ostream& out, std::ostream& err) {
  const auto* scenario = scenario_or_throw(a.scenario);
  const auto project = project_for(a, scenario);
  const auto settings = settings_for(a);
  const engine::HookFactory hooks = scenario ? scenario->hooks : engine::HookFactory{};
  const auto outcomes = sweep ? engine::sweep_run(project, settings, hooks, a.batches)
                              : engine::batch_run(project, settings, hooks, a.batches);
  // a bad config fails every run the same way; report it once as such
  if (!outcomes.empty() &&
      std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.input_error; })) {
    err << "error: " << outcomes.front().error << "\n";
    return usage_error;
  }
  const int code = report(outcomes, out, err);
  if (a.merge && code == ok) {
    std::set<fs::path> groups;
    for (const auto& o : outcomes) groups.insert(o.dir.parent_path());
    return merge_groups(groups, out);
  }
  return code;
}

fs::path snapshot_path(const std::string& run_dir, long iteration) {
  const auto p = fs::path(run_dir) / "snapshots" / (collect::snapshot_file_stem(iteration) + ".json");
  if (!fs::exists(p)) throw ConfigError("--iteration", "no snapshot for iteration " + std::to_string(iteration) + " in " + run_dir);
  return p;
}

json attr_json(const AttributeValue& v) {
  switch (kind_of(v)) {
    case ValueKind::number: return std::get<double>(v);
    case ValueKind::integer: return std::get<std::int64_t>(v);
    case ValueKind::category: return std::get<std::string>(v);
  }
  return nullptr;
}

int cmd_inspect(const std::string& run_dir, long iteration, long node, bool as_json, std::ostream& out) {
  const auto rec = collect::read_snapshot(snapshot_path(run_dir, iteration));
  if (node < 0 || static_cast<std::size_t>(node) >= rec.graph.node_count())
    throw ConfigError("--node", "node " + std::to_string(node) + " does not exist (graph has " +
                                    std::to_string(rec.graph.node_count()) + " nodes)");
  const auto v = static_cast<NodeId>(node);
  std::vector<NodeId> nbrs(rec.graph.neighbors(v).begin(), rec.graph.neighbors(v).end());
  if (rec.graph.directed())
    for (NodeId u : rec.graph.predecessors(v))
      if (std::find(nbrs.begin(), nbrs.end(), u) == nbrs.end()) nbrs.push_back(u);
  std::sort(nbrs.begin(), nbrs.end());
  const std::string type = rec.states.empty() ? std::string{} : rec.states[v];

  if (as_json) {
    json attrs = json::object();
    for (const auto& k : rec.attrs.node_keys())
      if (const auto* a = rec.attrs.node(v, k)) attrs[k] = attr_json(*a);
    json ns = json::array();
    for (NodeId u : nbrs) ns.push_back(json{{"id", u}, {"type", rec.states.empty() ? "" : rec.states[u]}});
    out << json{{"iteration", iteration}, {"node", v}, {"type", type}, {"attributes", attrs}, {"neighbors", ns}}.dump(1)
        << "\n";
    return ok;
  }
  out << "node " << v << " at iteration " << iteration << "\n";
  out << "  type: " << type << "\n";
  for (const auto& k : rec.attrs.node_keys())
    if (const auto* a = rec.attrs.node(v, k)) out << "  " << k << ": " << to_text(*a) << "\n";
  out << "  neighbors (" << nbrs.size() << "):\n";
  for (NodeId u : nbrs) out << "    " << u << " " << (rec.states.empty() ? "" : rec.states[u]) << "\n";
  return ok;
}

int cmd_export(const std::string& run_dir, long iteration, const std::string& format, const std::string& out_path,
               std::ostream& out) {
  if (format != "gexf") throw ConfigError("--format", "unknown export format '" + format + "' (supported: gexf)");
  if (!fs::is_directory(run_dir)) throw ConfigError("--run", "not a run directory: " + run_dir);
  const auto rec = collect::read_snapshot(snapshot_path(run_dir, iteration));
  const fs::path dest = out_path.empty()
                            ? fs::path(run_dir) / "exports" / (collect::snapshot_file_stem(iteration) + ".gexf")
                            : fs::path(out_path);
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  write_gexf(rec.graph, rec.states, rec.attrs, dest);
  out << dest.string() << "\n";
  return ok;
}

int cmd_merge(const std::string& parent, const std::vector<std::string>& dirs, const std::string& collector,
              const std::vector<std::string>& labels, const std::string& out_path, bool as_json, std::ostream& out) {
  std::vector<fs::path> written;
  if (!parent.empty()) {
    if (!dirs.empty()) throw ConfigError("--parent", "use either --parent or --dirs");
    written = collect::merge_parent_directory(parent);
  } else {
    if (dirs.empty()) throw ConfigError("", "one of --parent or --dirs is required");
    if (collector.empty()) throw ConfigError("--collector", "required with --dirs");
    std::vector<fs::path> paths(dirs.begin(), dirs.end());
    const auto merged = collect::merge_simulations(paths, collector, labels);
    const fs::path dest = out_path.empty() ? fs::path(collector + "-comparison.json") : fs::path(out_path);
    if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
    std::ofstream f(dest, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + dest.string());
    f << collect::labeled_to_json(collector, merged);
    written.push_back(dest);
  }
  if (as_json) {
    json arr = json::array();
    for (const auto& p : written) arr.push_back(p.string());
    out << json{{"written", arr}}.dump(1) << "\n";
  } else {
    for (const auto& p : written) out << p.string() << "\n";
  }
  return ok;
}

int cmd_chart(const std::vector<std::string>& inputs, const std::string& kind, const std::string& out_path,
              const std::string& title, std::ostream& out) {
  auto k = parse_chart_kind(kind);
  if (!k) throw ConfigError("--kind", "unknown chart kind '" + kind + "' (line, bar, area, scatter)");
  std::vector<ChartSeries> series;
  for (const auto& in : inputs) {
    auto s = load_chart_series(in);
    series.insert(series.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  ChartOptions opt;
  opt.kind = *k;
  opt.title = title;
  const fs::path dest(out_path);
  const bool html = dest.extension() == ".html" || dest.extension() == ".htm";
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  std::ofstream f(dest, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + dest.string());
  f << (html ? render_html(series, opt) : render_svg(series, opt));
  out << dest.string() << "\n";
  return ok;
}

int cmd_project_new(const std::string& name, const std::string& config_path, const std::string& scenario,
                    const std::string& home, const std::string& data_dir, std::ostream& out) {
  config::ProjectConfig cfg;
  if (!config_path.empty()) {
    if (!fs::exists(config_path)) throw ConfigError("--config", "file not found: " + config_path);
    cfg = config::load_config(config_path);
  } else if (const auto* s = scenario_or_throw(scenario)) {
    cfg = config::parse_config(s->fixture);
  } else {
    throw ConfigError("", "one of --config or --scenario is required");
  }
  const auto root = home_of(home) / name;
  if (fs::exists(root / "project.json")) throw ConfigError("name", "project already exists: " + root.string());
  const auto p = engine::Project::create(root, cfg, data_dir.empty() ? fs::current_path() : fs::absolute(data_dir));
  out << p.root().string() << "\n";
  return ok;
}

int cmd_project_list(const std::string& home_flag, std::ostream& out) {
  const auto home = home_of(home_flag);
  if (!fs::is_directory(home)) return ok;
  std::vector<fs::path> roots;
  for (const auto& entry : fs::directory_iterator(home))
    if (entry.is_directory() && fs::exists(entry.path() / "project.json")) roots.push_back(entry.path());
  std::sort(roots.begin(), roots.end());
  for (const auto& r : roots) {
    const auto p = engine::Project::open(r);
    out << r.filename().string() << "\t" << p.name() << "\t" << p.simulations().size() << " runs\t" << r.string()
        << "\n";
  }
  return ok;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"crowdkit: configuration-driven agent-based simulations on networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "crowdkit 0.1.0");

  std::function<int()> action;

  auto* project = app.add_subcommand("project", "create or list projects");
  project->require_subcommand(1);
  std::string p_name, p_config, p_scenario, p_home, p_data;
  auto* p_new = project->add_subcommand("new", "create a project from a config or scenario");
  p_new->add_option("name", p_name, "project directory name")->required();
  p_new->add_option("--config", p_config, "YAML configuration file");
  p_new->add_option("--scenario", p_scenario, "built-in scenario whose fixture config to use");
  p_new->add_option("--home", p_home, "project home");
  p_new->add_option("--data-dir", p_data, "directory relative structure paths resolve against");
  p_new->callback([&] { action = [&] { return cmd_project_new(p_name, p_config, p_scenario, p_home, p_data, out); }; });
  auto* p_list = project->add_subcommand("list", "list projects in the home directory");
  p_list->add_option("--home", p_home, "project home");
  p_list->callback([&] { action = [&] { return cmd_project_list(p_home, out); }; });

  RunArgs run_args, sweep_args;
  auto* run_cmd = app.add_subcommand("run", "run a simulation, optionally as several batches");
  add_run_flags(run_cmd, run_args);
  run_cmd->callback([&] { action = [&] { return cmd_run(run_args, false, out, err); }; });

  auto* sweep_cmd = app.add_subcommand("sweep", "run every value of the config's sweep section");
  add_run_flags(sweep_cmd, sweep_args);
  sweep_cmd->callback([&] { action = [&] { return cmd_run(sweep_args, true, out, err); }; });

  std::string m_parent, m_collector, m_out, m_mode;
  std::vector<std::string> m_dirs, m_labels;
  bool m_json = false;
  auto* merge = app.add_subcommand("merge", "average batches or combine simulations for comparison");
  merge->add_option("--parent", m_parent, "directory whose batch-* runs are averaged into merged/");
  merge->add_option("--dirs", m_dirs, "run directories to combine into one labeled file");
  merge->add_option("--collector", m_collector, "collector name for --dirs");
  merge->add_option("--labels", m_labels, "labels for --dirs (default: simulation names)");
  merge->add_option("--mode", m_mode, "mean (with --parent) or labeled (with --dirs)")
      ->check(CLI::IsMember({"mean", "labeled"}));
  merge->add_option("--out", m_out, "output file for --dirs");
  merge->add_flag("--json", m_json, "machine-readable output");
  merge->callback([&] {
    action = [&] {
      if (m_mode == "mean" && m_parent.empty()) throw ConfigError("--mode", "mean requires --parent");
      if (m_mode == "labeled" && m_dirs.empty()) throw ConfigError("--mode", "labeled requires --dirs");
      return cmd_merge(m_parent, m_dirs, m_collector, m_labels, m_out, m_json, out);
    };
  });

  std::vector<std::string> c_inputs;
  std::string c_kind = "line", c_out, c_title;
  auto* chart = app.add_subcommand("chart", "draw collector series as SVG or HTML");
  chart->add_option("--input", c_inputs, "collector, merged or labeled JSON file")->required();
  chart->add_option("--kind", c_kind, "line, bar, area or scatter");
  chart->add_option("--out", c_out, "output .svg or .html")->required();
  chart->add_option("--title", c_title, "chart title");
  chart->callback([&] { action = [&] { return cmd_chart(c_inputs, c_kind, c_out, c_title, out); }; });

  std::string i_run;
  long i_iter = 0, i_node = 0;
  bool i_json = false;
  auto* inspect = app.add_subcommand("inspect", "show a node's type, attributes and neighbors in a snapshot");
  inspect->add_option("--run", i_run, "run directory")->required();
  inspect->add_option("--iteration", i_iter, "snapshot iteration");
  inspect->add_option("--node", i_node, "node id")->required();
  inspect->add_flag("--json", i_json, "machine-readable output");
  inspect->callback([&] { action = [&] { return cmd_inspect(i_run, i_iter, i_node, i_json, out); }; });

  std::string e_run, e_format = "gexf", e_out;
  long e_iter = 0;
  auto* exp = app.add_subcommand("export", "write a snapshot as GEXF");
  exp->add_option("--run", e_run, "run directory")->required();
  exp->add_option("--iteration", e_iter, "snapshot iteration");
  exp->add_option("--format", e_format, "export format (gexf)");
  exp->add_option("--out", e_out, "output file (default: <run>/exports/iter_<i>.gexf)");
  exp->callback([&] { action = [&] { return cmd_export(e_run, e_iter, e_format, e_out, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    // subcommand help requests arrive here too
    if (e.get_exit_code() == 0) return ok;
    err << "run with --help for usage\n";
    return usage_error;
  }
  if (!action) return usage_error;
  const bool data_cmd = merge->parsed() || chart->parsed();
  return guarded(err, data_cmd ? data_error : usage_error, action);
}

}  // namespace crowdkit::cli
