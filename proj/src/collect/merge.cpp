#include <algorithm>
#include <set>

#include "crowdkit/collect.hpp"
#include "io_util.hpp"

namespace crowdkit::collect {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// batch-<k> subdirectories ordered by k
std::vector<fs::path> batch_dirs(const fs::path& parent) {
  std::vector<std::pair<long, fs::path>> found;
  if (!fs::is_directory(parent)) throw MergeError("not a directory: " + parent.string());
  for (const auto& entry : fs::directory_iterator(parent)) {
    if (!entry.is_directory()) continue;
    const auto name = entry.path().filename().string();
    if (!name.starts_with("batch-")) continue;
    try {
      found.emplace_back(std::stol(name.substr(6)), entry.path());
    } catch (const std::exception&) {
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto& [_, p] : found) out.push_back(std::move(p));
  return out;
}

std::set<std::string> collector_names(const fs::path& dir) {
  std::set<std::string> names;
  const auto cdir = dir / "collectors";
  if (!fs::is_directory(cdir)) return names;
  for (const auto& entry : fs::directory_iterator(cdir))
    if (entry.path().extension() == ".json") names.insert(entry.path().stem().string());
  return names;
}

CollectorSeries read_for_merge(const fs::path& path) {
  try {
    return CollectorSeries::read(path);
  } catch (const ParseError& e) {
    throw MergeError(e.what());
  }
}

json mean_json(const std::vector<json>& docs, const std::vector<std::string>& labels, const std::string& where) {
  const auto& first = docs.front();
  if (first.is_number()) {
    double sum = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!docs[i].is_number()) throw MergeError(labels[i] + ": " + where + " is not a number");
      sum += docs[i].get<double>();
    }
    return sum / static_cast<double>(docs.size());
  }
  if (first.is_object()) {
    json out = json::object();
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!docs[i].is_object() || docs[i].size() != first.size())
        throw MergeError(labels[i] + ": " + where + " has different keys than " + labels[0]);
    }
    for (const auto& [k, _] : first.items()) {
      std::vector<json> parts;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!docs[i].contains(k)) throw MergeError(labels[i] + ": " + where + " lacks key '" + k + "'");
        parts.push_back(docs[i][k]);
      }
      out[k] = mean_json(parts, labels, where.empty() ? k : where + "." + k);
    }
    return out;
  }
  // non-numeric leaves must agree across batches
  for (std::size_t i = 1; i < docs.size(); ++i)
    if (docs[i] != first) throw MergeError(labels[i] + ": " + where + " differs and is not numeric");
  return first;
}

}  // namespace

CollectorSeries mean_series(const std::vector<CollectorSeries>& series, const std::vector<std::string>& labels) {
  if (series.empty()) throw MergeError("nothing to merge");
  auto label = [&](std::size_t i) { return i < labels.size() ? labels[i] : "#" + std::to_string(i); };
  const auto& ref = series.front();
  for (std::size_t i = 1; i < series.size(); ++i) {
    const auto& s = series[i];
    if (s.size() != ref.size())
      throw MergeError(label(i) + ": series '" + ref.name() + "' has " + std::to_string(s.size()) + " entries, " +
                       label(0) + " has " + std::to_string(ref.size()));
  }
  CollectorSeries out(ref.name());
  for (std::size_t e = 0; e < ref.size(); ++e) {
    const auto& base = ref.entries()[e];
    if (const auto* map = std::get_if<FlatMap>(&base.value)) {
      FlatMap acc;
      for (const auto& [k, _] : *map) acc[k] = 0;
      for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& entry = series[i].entries()[e];
        if (entry.iteration != base.iteration)
          throw MergeError(label(i) + ": iteration " + std::to_string(entry.iteration) + " where " + label(0) +
                           " has " + std::to_string(base.iteration));
        const auto* m = std::get_if<FlatMap>(&entry.value);
        if (!m) throw MergeError(label(i) + ": series '" + ref.name() + "' holds numbers, expected maps");
        if (m->size() != map->size()) throw MergeError(label(i) + ": key set differs at iteration " + std::to_string(base.iteration));
        for (const auto& [k, x] : *m) {
          auto it = acc.find(k);
          if (it == acc.end())
            throw MergeError(label(i) + ": unexpected key '" + k + "' at iteration " + std::to_string(base.iteration));
          it->second += x;
        }
      }
      for (auto& [_, x] : acc) x /= static_cast<double>(series.size());
      out.record(base.iteration, std::move(acc));
    } else {
      double sum = 0;
      for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& entry = series[i].entries()[e];
        if (entry.iteration != base.iteration)
          throw MergeError(label(i) + ": iteration " + std::to_string(entry.iteration) + " where " + label(0) +
                           " has " + std::to_string(base.iteration));
        const auto* d = std::get_if<double>(&entry.value);
        if (!d) throw MergeError(label(i) + ": series '" + ref.name() + "' holds maps, expected numbers");
        sum += *d;
      }
      out.record(base.iteration, sum / static_cast<double>(series.size()));
    }
  }
  return out;
}

std::vector<fs::path> merge_parent_directory(const fs::path& parent) {
  const auto batches = batch_dirs(parent);
  if (batches.empty()) throw MergeError("no batch-* directories under " + parent.string());
  std::vector<std::string> labels;
  for (const auto& b : batches) labels.push_back(b.filename().string());

  std::set<std::string> names;
  for (const auto& b : batches) names.merge(collector_names(b));
  std::vector<fs::path> written;
  const auto out_dir = parent / "merged";
  for (const auto& name : names) {
    std::vector<CollectorSeries> series;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      const auto path = batches[i] / "collectors" / (name + ".json");
      if (!fs::exists(path)) throw MergeError(labels[i] + ": missing collector '" + name + "'");
      series.push_back(read_for_merge(path));
    }
    const auto path = out_dir / (name + ".json");
    mean_series(series, labels).write(path);
    written.push_back(path);
  }

  std::size_t with_summary = 0;
  for (const auto& b : batches) with_summary += fs::exists(b / "summary.json");
  if (with_summary > 0) {
    std::vector<json> docs;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      const auto path = batches[i] / "summary.json";
      if (!fs::exists(path)) throw MergeError(labels[i] + ": missing summary.json");
      try {
        docs.push_back(detail::parse_json(detail::slurp(path), path.string()));
      } catch (const ParseError& e) {
        throw MergeError(e.what());
      }
    }
    const auto path = out_dir / "summary.json";
    detail::spit(path, mean_json(docs, labels, "").dump(1) + "\n");
    written.push_back(path);
  }
  return written;
}

std::string simulation_label(const fs::path& dir) {
  auto p = dir;
  while (!p.empty() && p.filename().empty()) p = p.parent_path();  // trailing slash
  const auto name = p.filename().string();
  if ((name.starts_with("batch-") || name == "merged") && p.has_parent_path()) return p.parent_path().filename().string();
  return name;
}

std::vector<LabeledSeries> merge_simulations(const std::vector<fs::path>& dirs, const std::string& name,
                                             const std::vector<std::string>& labels) {
  if (dirs.empty()) throw MergeError("no directories given");
  if (!labels.empty() && labels.size() != dirs.size()) throw MergeError("one label per directory is required");
  std::vector<LabeledSeries> out;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto label = labels.empty() ? simulation_label(dirs[i]) : labels[i];
    fs::path path;
    for (const auto& candidate : {dirs[i] / "merged" / (name + ".json"), dirs[i] / "collectors" / (name + ".json"),
                                  dirs[i] / (name + ".json")}) {
      if (fs::exists(candidate)) {
        path = candidate;
        break;
      }
    }
    if (path.empty()) throw MergeError(label + ": missing collector '" + name + "' in " + dirs[i].string());
    auto series = read_for_merge(path);
    if (!out.empty() && !series.empty() && !out.front().series.empty() &&
        is_map(series.entries().front().value) != is_map(out.front().series.entries().front().value))
      throw MergeError(label + ": collector '" + name + "' has a different value format than " + out.front().label);
    out.push_back(LabeledSeries{label, std::move(series)});
  }
  return out;
}

}  // namespace crowdkit::collect
