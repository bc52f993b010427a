#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "crowdkit/attributes.hpp"
#include "crowdkit/graph.hpp"
#include "crowdkit/graph_io.hpp"

namespace crowdkit::collect {

using FlatMap = std::map<std::string, double>;
// What a hook may return: a number or a flat key -> number map.
using CollectorValue = std::variant<double, FlatMap>;

struct SeriesEntry {
  long iteration = 0;
  CollectorValue value;
  friend bool operator==(const SeriesEntry&, const SeriesEntry&) = default;
};

// File schema: {"name": <hook>, "entries": [{"iteration": i, "value": v}, ...]}
class CollectorSeries {
 public:
  CollectorSeries() = default;
  explicit CollectorSeries(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<SeriesEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  // Throws HookError when the iteration does not increase or the value shape
  // (number vs map) differs from earlier entries.
  void record(long iteration, CollectorValue value);

  std::string to_json() const;
  static CollectorSeries from_json(const std::string& text, const std::string& source = "<string>");
  void write(const std::filesystem::path& path) const;
  static CollectorSeries read(const std::filesystem::path& path);

  friend bool operator==(const CollectorSeries&, const CollectorSeries&) = default;

 private:
  std::string name_;
  std::vector<SeriesEntry> entries_;
};

bool is_map(const CollectorValue& v) noexcept;

// ---- snapshots ----------------------------------------------------------------

struct SnapshotRecord {
  long iteration = 0;
  Graph graph;
  NodeLabels states;
  AttributeTable attrs;
  ParamMap net_params;
  friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

std::string snapshot_file_stem(long iteration);  // "iter_<i>"

// Writes <dir>/iter_<i>.json (node-link) and <dir>/iter_<i>.gexf.
void write_snapshot(const SnapshotRecord& record, const std::filesystem::path& dir);
std::string snapshot_to_json(const SnapshotRecord& record);
SnapshotRecord snapshot_from_json(const std::string& text, const std::string& source = "<string>");
// Reads the JSON form. Throws ParseError with path context.
SnapshotRecord read_snapshot(const std::filesystem::path& path);

// Snapshot iterations present in <run>/snapshots, ascending.
std::vector<long> list_snapshots(const std::filesystem::path& run_dir);

// ---- merging --------------------------------------------------------------------

// Averages every collector across the batch-* subdirectories of `parent`
// into parent/merged/<name>.json, key-wise for maps, and summary.json files
// into parent/merged/summary.json. Returns the written files.
// Throws MergeError naming the offending batch on any mismatch.
std::vector<std::filesystem::path> merge_parent_directory(const std::filesystem::path& parent);

// Pointwise mean of equally shaped series (exposed for testing).
CollectorSeries mean_series(const std::vector<CollectorSeries>& series, const std::vector<std::string>& labels);

struct LabeledSeries {
  std::string label;
  CollectorSeries series;
};

// Collector `name` from each run directory, tagged with the simulation name.
// Looks for <dir>/merged/<name>.json, then <dir>/collectors/<name>.json.
std::vector<LabeledSeries> merge_simulations(const std::vector<std::filesystem::path>& dirs, const std::string& name,
                                             const std::vector<std::string>& labels = {});
// {"name": <collector>, "mode": "labeled", "series": [{"label", "entries"}...]}
std::string labeled_to_json(const std::string& name, const std::vector<LabeledSeries>& series);
std::vector<LabeledSeries> labeled_from_json(const std::string& text, const std::string& source = "<string>");
// Default label of a run directory: its name, or the parent's name for
// batch-*/merged directories.
std::string simulation_label(const std::filesystem::path& dir);

}  // namespace crowdkit::collect
