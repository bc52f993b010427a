#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "crowdkit/errors.hpp"
#include "crowdkit/engine.hpp"
#include "json.hpp"

namespace crowdkit::engine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json value_json(const CollectorValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  json obj = json::object();
  for (const auto& [k, x] : std::get<collect::FlatMap>(v)) obj[k] = x;
  return obj;
}

void write_collectors(const Simulation& sim, const fs::path& dir) {
  fs::create_directories(dir / "collectors");
  for (const auto& [name, series] : sim.collectors()) series.write(dir / "collectors" / (name + ".json"));
}

// A run directory is only ever replaced by another run.
void prepare_run_dir(const fs::path& dir) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir) && !fs::exists(dir / "run-meta.json"))
      throw std::runtime_error("refusing to overwrite " + dir.string() + ": not a run directory");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
}

struct Job {
  config::ProjectConfig config;
  RunSettings settings;
  fs::path dir;
};

std::vector<RunOutcome> run_jobs(const std::vector<Job>& jobs, const fs::path& base_dir, const HookFactory& hooks,
                                 unsigned threads) {
  std::vector<RunOutcome> out(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  std::atomic<std::size_t> next{0};
  std::mutex factory_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      auto& o = out[i];
      o.dir = job.dir;
      o.batch = job.settings.curr_batch;
      o.sweep_index = job.settings.sweep_index;
      try {
        HookRegistry registry;
        {
          std::lock_guard lock(factory_mutex);
          registry = hooks ? hooks() : HookRegistry{};
        }
        run_into(job.config, base_dir, job.settings, std::move(registry), job.dir);
      } catch (const ConfigError& e) {
        o.ok = false;
        o.input_error = true;
        o.error = e.what();
      } catch (const ParseError& e) {
        o.ok = false;
        o.input_error = true;
        o.error = e.what();
      } catch (const std::exception& e) {
        o.ok = false;
        o.error = e.what();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace

void run_into(const config::ProjectConfig& config, const fs::path& base_dir, const RunSettings& settings,
              HookRegistry hooks, const fs::path& dir) {
  settings.check();
  prepare_run_dir(dir);
  write_text(dir / "config.yaml", config::serialize_config(config));

  Simulation sim(config, settings, std::move(hooks), base_dir);
  const auto snap_dir = dir / "snapshots";
  sim.on_snapshot = [&](const collect::SnapshotRecord& r) { collect::write_snapshot(r, snap_dir); };
  sim.on_flush = [&](const Simulation& s) { write_collectors(s, dir); };

  json meta{{"name", config.name},
            {"sim", settings.sim_name},
            {"batch", settings.curr_batch},
            {"sweep_index", settings.sweep_index},
            {"master_seed", settings.master_seed},
            {"seed", settings.run_seed()},
            {"epochs", settings.epochs},
            {"snapshot_period", settings.snapshot_period}};
  const auto start = std::chrono::steady_clock::now();
  auto finish_meta = [&](const std::string& status, const std::string& error) {
    meta["status"] = status;
    if (!error.empty()) meta["error"] = error;
    meta["iterations_completed"] = sim.initialized() ? sim.context().iteration() : 0;
    meta["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(dir / "run-meta.json", meta.dump(1) + "\n");
  };

  try {
    sim.run();
  } catch (const std::exception& e) {
    if (sim.initialized()) write_collectors(sim, dir);
    finish_meta("failed", e.what());
    throw;
  }
  write_collectors(sim, dir);
  if (!sim.summary().empty()) {
    json summary = json::object();
    for (const auto& [name, value] : sim.summary()) summary[name] = value_json(value);
    write_text(dir / "summary.json", summary.dump(1) + "\n");
  }
  finish_meta("ok", "");
}

fs::path run_simulation(const Project& project, const RunSettings& settings, HookRegistry hooks) {
  auto config = project.config();
  config.sweep.reset();
  const auto dir = project.root() / settings.sim_name / ("batch-" + std::to_string(settings.curr_batch));
  run_into(config, project.source_dir(), settings, std::move(hooks), dir);
  return dir;
}

std::vector<RunOutcome> batch_run(const Project& project, const RunSettings& settings, const HookFactory& hooks,
                                  std::size_t n_batches) {
  if (n_batches < 1) throw ConfigError("batches", "must be at least 1");
  settings.check();
  auto config = project.config();
  config.sweep.reset();
  std::vector<Job> jobs;
  for (std::size_t b = 0; b < n_batches; ++b) {
    RunSettings s = settings;
    s.curr_batch = b;
    jobs.push_back(Job{config, s, project.root() / settings.sim_name / ("batch-" + std::to_string(b))});
  }
  return run_jobs(jobs, project.source_dir(), hooks, settings.threads);
}

std::vector<RunOutcome> sweep_run(const Project& project, const RunSettings& settings, const HookFactory& hooks,
                                  std::size_t n_batches) {
  if (!project.config().sweep || project.config().sweep->empty()) throw ConfigError("sweep", "no sweep section");
  if (n_batches < 1) throw ConfigError("batches", "must be at least 1");
  settings.check();
  const auto variants = config::expand_sweep(project.config());
  std::set<std::string> labels;
  for (const auto& v : variants)
    if (!labels.insert(v.label()).second) throw ConfigError("sweep", "two sweep points share the directory name '" + v.label() + "'");
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const auto group = project.root() / settings.sim_name / variants[i].label();
    for (std::size_t b = 0; b < n_batches; ++b) {
      RunSettings s = settings;
      s.curr_batch = b;
      s.sweep_index = i + 1;
      jobs.push_back(Job{variants[i].config, s, group / ("batch-" + std::to_string(b))});
    }
  }
  return run_jobs(jobs, project.source_dir(), hooks, settings.threads);
}

}  // namespace crowdkit::engine
