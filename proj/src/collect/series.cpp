#include "crowdkit/collect.hpp"
#include "io_util.hpp"

namespace crowdkit::collect {

using nlohmann::json;
using detail::parse_json;
using detail::slurp;
using detail::spit;

bool is_map(const CollectorValue& v) noexcept { return std::holds_alternative<FlatMap>(v); }

void CollectorSeries::record(long iteration, CollectorValue value) {
  if (!entries_.empty()) {
    if (iteration <= entries_.back().iteration)
      throw HookError(name_, iteration, "iterations must be strictly increasing (last was " +
                                            std::to_string(entries_.back().iteration) + ")");
    if (is_map(value) != is_map(entries_.back().value))
      throw HookError(name_, iteration,
                      std::string("value shape changed from ") + (is_map(entries_.back().value) ? "map" : "number") +
                          " to " + (is_map(value) ? "map" : "number"));
  }
  entries_.push_back(SeriesEntry{iteration, std::move(value)});
}

namespace {

json value_json(const CollectorValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  json obj = json::object();
  for (const auto& [k, x] : std::get<FlatMap>(v)) obj[k] = x;
  return obj;
}

CollectorValue value_from(const json& j, const std::string& source) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object()) {
    FlatMap m;
    for (const auto& [k, x] : j.items()) {
      if (!x.is_number()) throw ParseError(source, 0, "map value '" + k + "' is not a number");
      m[k] = x.get<double>();
    }
    return m;
  }
  throw ParseError(source, 0, "collector value must be a number or a flat map");
}

json entries_json(const CollectorSeries& s) {
  json arr = json::array();
  for (const auto& e : s.entries()) arr.push_back(json{{"iteration", e.iteration}, {"value", value_json(e.value)}});
  return arr;
}

CollectorSeries series_from(const std::string& name, const json& entries, const std::string& source) {
  if (!entries.is_array()) throw ParseError(source, 0, "'entries' must be an array");
  CollectorSeries s(name);
  for (const auto& e : entries) {
    if (!e.is_object() || !e.contains("iteration") || !e.contains("value") || !e["iteration"].is_number_integer())
      throw ParseError(source, 0, "each entry needs an integer 'iteration' and a 'value'");
    try {
      s.record(e["iteration"].get<long>(), value_from(e["value"], source));
    } catch (const HookError& err) {
      throw ParseError(source, 0, err.what());
    }
  }
  return s;
}

}  // namespace

std::string CollectorSeries::to_json() const {
  json j{{"name", name_}, {"entries", entries_json(*this)}};
  return j.dump(1) + "\n";
}

CollectorSeries CollectorSeries::from_json(const std::string& text, const std::string& source) {
  const auto j = parse_json(text, source);
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string() || !j.contains("entries"))
    throw ParseError(source, 0, "collector file needs 'name' and 'entries'");
  return series_from(j["name"].get<std::string>(), j["entries"], source);
}

void CollectorSeries::write(const std::filesystem::path& path) const { spit(path, to_json()); }

CollectorSeries CollectorSeries::read(const std::filesystem::path& path) {
  return from_json(slurp(path), path.string());
}

std::string labeled_to_json(const std::string& name, const std::vector<LabeledSeries>& series) {
  json arr = json::array();
  for (const auto& s : series) arr.push_back(json{{"label", s.label}, {"entries", entries_json(s.series)}});
  return json{{"name", name}, {"mode", "labeled"}, {"series", arr}}.dump(1) + "\n";
}

std::vector<LabeledSeries> labeled_from_json(const std::string& text, const std::string& source) {
  const auto j = parse_json(text, source);
  if (!j.is_object() || !j.contains("series") || !j["series"].is_array() || !j.contains("name"))
    throw ParseError(source, 0, "labeled file needs 'name' and 'series'");
  std::vector<LabeledSeries> out;
  const auto name = j["name"].get<std::string>();
  for (const auto& s : j["series"]) {
    if (!s.is_object() || !s.contains("label") || !s.contains("entries"))
      throw ParseError(source, 0, "each series needs 'label' and 'entries'");
    out.push_back(LabeledSeries{s["label"].get<std::string>(), series_from(name, s["entries"], source)});
  }
  return out;
}

}  // namespace crowdkit::collect
