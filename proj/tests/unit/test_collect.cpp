#include <cmath>

#include "crowdkit/collect.hpp"
#include "crowdkit/errors.hpp"
#include "crowdkit/generators.hpp"
#include "crowdkit/population.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace crowdkit;
using namespace crowdkit::collect;
using testsupport::TempDir;
namespace fs = std::filesystem;

namespace {

CollectorSeries scalar_series(const std::string& name, const std::vector<double>& values, long first = 1) {
  CollectorSeries s(name);
  for (std::size_t i = 0; i < values.size(); ++i) s.record(first + static_cast<long>(i), values[i]);
  return s;
}

void write_batch(const fs::path& parent, int b, const std::vector<CollectorSeries>& series) {
  const auto dir = parent / ("batch-" + std::to_string(b)) / "collectors";
  fs::create_directories(dir);
  for (const auto& s : series) s.write(dir / (s.name() + ".json"));
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("series recording rules") {
  CollectorSeries s("x");
  for (int i = 1; i <= 50; ++i) s.record(i, i * 0.5);
  CHECK(s.size() == 50);
  const auto doc = nlohmann::json::parse(s.to_json());
  CHECK(doc["name"] == "x");
  CHECK(doc["entries"].size() == 50);
  CHECK(doc["entries"][0]["iteration"] == 1);
  CHECK_THROWS_AS(s.record(50, 1.0), HookError);

  CollectorSeries m("counts");
  m.record(0, FlatMap{{"I", 340}, {"T", 300}, {"U", 384}});
  CHECK_THROWS_AS(m.record(1, 2.0), HookError);

  CHECK(CollectorSeries::from_json(s.to_json()) == s);
  CHECK(CollectorSeries::from_json(m.to_json()) == m);
  const CollectorSeries empty("nothing");
  CHECK(nlohmann::json::parse(empty.to_json())["entries"].empty());
  CHECK_THROWS_AS(CollectorSeries::from_json("{\"name\": 3}"), ParseError);
  CHECK_THROWS_AS(CollectorSeries::from_json("not json"), ParseError);
}

TEST_CASE("mean merge of two batches") {
  TempDir dir("merge");
  write_batch(dir.path(), 0, {scalar_series("v", {1, 2, 3})});
  write_batch(dir.path(), 1, {scalar_series("v", {3, 4, 5})});
  const auto written = merge_parent_directory(dir.path());
  REQUIRE(written.size() == 1);
  CHECK(written[0] == dir / "merged/v.json");
  const auto merged = CollectorSeries::read(written[0]);
  CHECK(merged == scalar_series("v", {2, 3, 4}));
}

TEST_CASE("single batch merges to itself") {
  TempDir dir("merge1");
  CollectorSeries m("counts");
  m.record(0, FlatMap{{"a", 1.5}, {"b", 2}});
  m.record(3, FlatMap{{"a", 0.25}, {"b", 7}});
  write_batch(dir.path(), 0, {scalar_series("v", {0.1, 0.7}), m});
  merge_parent_directory(dir.path());
  CHECK(CollectorSeries::read(dir / "merged/v.json") == scalar_series("v", {0.1, 0.7}));
  CHECK(CollectorSeries::read(dir / "merged/counts.json") == m);
}

TEST_CASE("mean merge agrees with a one-pass oracle and ignores batch order") {
  Rng rng(11);
  const std::size_t batches = 50, len = 200;
  std::vector<std::vector<double>> rows(batches, std::vector<double>(len));
  for (auto& r : rows)
    for (auto& x : r) x = rng.uniform(-1e3, 1e6);
  std::vector<CollectorSeries> series;
  for (const auto& r : rows) series.push_back(scalar_series("global_payoff", r));
  const auto expect = oracle::mean_of(rows);

  std::vector<std::string> labels;
  for (std::size_t b = 0; b < batches; ++b) labels.push_back("batch-" + std::to_string(b));
  const auto m = mean_series(series, labels);
  std::vector<std::size_t> order(batches);
  for (std::size_t i = 0; i < batches; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<CollectorSeries> shuffled;
  for (auto i : order) shuffled.push_back(series[i]);
  const auto m2 = mean_series(shuffled, labels);
  for (std::size_t i = 0; i < len; ++i) {
    CHECK(rel_err(std::get<double>(m.entries()[i].value), expect[i]) < 1e-12);
    CHECK(rel_err(std::get<double>(m2.entries()[i].value), expect[i]) < 1e-12);
  }
}

TEST_CASE("merge errors name the offending batch") {
  auto message = [](const fs::path& p) -> std::string {
    try {
      merge_parent_directory(p);
    } catch (const MergeError& e) {
      return e.what();
    }
    return {};
  };
  {
    TempDir dir("short");
    write_batch(dir.path(), 0, {scalar_series("v", {1, 2, 3})});
    write_batch(dir.path(), 1, {scalar_series("v", {1, 2})});
    CHECK(message(dir.path()).find("batch-1") != std::string::npos);
  }
  {
    TempDir dir("keys");
    CollectorSeries a("c"), b("c");
    a.record(1, FlatMap{{"x", 1}});
    b.record(1, FlatMap{{"y", 1}});
    write_batch(dir.path(), 0, {a});
    write_batch(dir.path(), 1, {b});
    CHECK(message(dir.path()).find("batch-1") != std::string::npos);
  }
  {
    TempDir dir("missing");
    write_batch(dir.path(), 0, {scalar_series("v", {1}), scalar_series("w", {1})});
    write_batch(dir.path(), 1, {scalar_series("v", {1})});
    CHECK(message(dir.path()).find("batch-1") != std::string::npos);
  }
  {
    TempDir dir("none");
    CHECK_THROWS_AS(merge_parent_directory(dir.path()), MergeError);
  }
}

TEST_CASE("summaries are averaged too") {
  TempDir dir("summary");
  write_batch(dir.path(), 0, {scalar_series("v", {1})});
  write_batch(dir.path(), 1, {scalar_series("v", {1})});
  testsupport::spit(dir / "batch-0/summary.json", R"({"trust_summary": {"count_I": 10, "final": 2.0}})");
  testsupport::spit(dir / "batch-1/summary.json", R"({"trust_summary": {"count_I": 20, "final": 3.0}})");
  merge_parent_directory(dir.path());
  const auto doc = nlohmann::json::parse(testsupport::slurp(dir / "merged/summary.json"));
  CHECK(doc["trust_summary"]["count_I"].get<double>() == 15.0);
  CHECK(doc["trust_summary"]["final"].get<double>() == 2.5);
}

TEST_CASE("labeled merge across simulations") {
  TempDir dir("labeled");
  const std::vector<std::string> methods{"pagerank", "degree", "betweenness", "eigenvector"};
  std::vector<fs::path> dirs;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    write_batch(dir / methods[i], 0, {scalar_series("total_active", {100, 150 + double(i), 170})});
    dirs.push_back(dir / methods[i] / "batch-0");
  }
  const auto merged = merge_simulations(dirs, "total_active");
  REQUIRE(merged.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(merged[i].label == methods[i]);
  const auto text = labeled_to_json("total_active", merged);
  const auto back = labeled_from_json(text);
  REQUIRE(back.size() == 4);
  CHECK(back[2].series == merged[2].series);

  CHECK(merge_simulations({dirs[0]}, "total_active").size() == 1);
  CHECK(merge_simulations({dirs[0]}, "total_active", {"mine"})[0].label == "mine");

  CollectorSeries map_series("total_active");
  map_series.record(1, FlatMap{{"a", 1}});
  write_batch(dir / "odd", 0, {map_series});
  CHECK_THROWS_AS(merge_simulations({dirs[0], dir / "odd/batch-0"}, "total_active"), MergeError);
  CHECK_THROWS_AS(merge_simulations({dirs[0]}, "nope"), MergeError);
}

TEST_CASE("snapshot round trip") {
  const auto c = testsupport::fixture("sir");
  Rng rng(8);
  const auto g = config::build_structure(c, rng);
  auto pop = config::initialize_population(c, g, rng);
  pop.states[0] = "Recovered";
  pop.attrs.declare_edge_key("influence_prob", ValueKind::number);
  for (const auto& e : g.edges()) {
    pop.attrs.set_edge(e, "influence_prob", 1.0 / g.degree(e.target));
    pop.attrs.set_edge({e.target, e.source}, "influence_prob", 0.25 + 1e-9 * e.source);
  }
  pop.net_params["R_T"] = 6.0;
  pop.net_params["mode"] = std::string("single");
  pop.net_params["k"] = std::int64_t{3};
  const SnapshotRecord rec{4999, g, pop.states, pop.attrs, pop.net_params};
  CHECK(snapshot_from_json(snapshot_to_json(rec)) == rec);

  TempDir dir("snap");
  write_snapshot(rec, dir.path());
  CHECK(fs::exists(dir / "iter_4999.json"));
  CHECK(fs::exists(dir / "iter_4999.gexf"));
  CHECK(read_snapshot(dir / "iter_4999.json") == rec);
  const auto gexf = load_gexf(dir / "iter_4999.gexf");
  CHECK(gexf.graph == rec.graph);
  CHECK(gexf.states == rec.states);
  CHECK(gexf.attrs == rec.attrs);
  CHECK(snapshot_file_stem(0) == "iter_0");
  CHECK_THROWS_AS(snapshot_from_json("{\"iteration\": 1}"), ParseError);
}
