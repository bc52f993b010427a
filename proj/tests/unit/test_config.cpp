#include <algorithm>
#include <cmath>
#include <map>

#include "crowdkit/config.hpp"
#include "crowdkit/errors.hpp"
#include "crowdkit/generators.hpp"
#include "crowdkit/population.hpp"
#include "crowdkit/scenarios.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace crowdkit;
using namespace crowdkit::config;

namespace {

const char* sir_text = R"(name: SIR-example
structure:
  random:
    count: 100
    degree: 4
    type: random-regular
definitions:
  pd-model:
    name: diffusion
    nodetypes:
      Susceptible:
        random-with-weight:
          initial-weight: 0.9
      Infected:
        random-with-weight:
          initial-weight: 0.1
      Recovered:
        random-with-weight:
          initial-weight: 0
    node-parameters:
      numerical:
        age: [0, 100]
    compartments:
      c1: {type: node-stochastic, ratio: 0.1, triggering_status: Infected}
      c2: {type: count-down, name: healing, iteration-count: 4}
    rules:
      r1: [Susceptible, Infected, c1]
      r2: [Infected, Recovered, c2]
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("the SIR listing parses into typed sections") {
  const auto c = parse_config(sir_text);
  CHECK(c.name == "SIR-example");
  const auto& s = std::get<RandomStructure>(c.structure);
  CHECK(s.type == Generator::random_regular);
  CHECK(s.count == 100);
  CHECK(s.degree == 4);
  const auto& d = c.definitions;
  CHECK(d.model_kind == ModelKind::diffusion);
  REQUIRE(d.nodetypes.size() == 3);
  CHECK(d.nodetypes[0].first == "Susceptible");
  CHECK(std::get<RandomWithWeight>(d.nodetypes[0].second).weight == 0.9);
  CHECK(std::get<RandomWithWeight>(d.nodetypes[1].second).weight == 0.1);
  CHECK(std::get<RandomWithWeight>(d.nodetypes[2].second).weight == 0.0);
  CHECK(d.compartments.size() == 2);
  CHECK(std::get<NodeStochasticSpec>(*find(d.compartments, "c1")).triggering_status == "Infected");
  CHECK(std::get<CountDownSpec>(*find(d.compartments, "c2")).iteration_count == 4);
  REQUIRE(d.rules.size() == 2);
  CHECK(d.rules[0].second == RuleSpec{"Susceptible", "Infected", "c1"});
  CHECK(std::get<NumericalParam>(*find(d.node_parameters, "age")) == NumericalParam{0, 100});
  CHECK(validate(c).empty());
  CHECK(c == parse_config(scenarios::find_scenario("sir")->fixture));
}

TEST_CASE("parse errors carry the document path") {
  CHECK(error_of(replace(sir_text, "random-regular", "random-irregular")).find("structure.random.type") !=
        std::string::npos);
  CHECK(error_of(replace(sir_text, "    degree: 4", "    degree: 4\n    colour: red")).find("colour") !=
        std::string::npos);
  CHECK(error_of(replace(sir_text, "ratio: 0.1", "ratio: lots")).find("definitions.pd-model.compartments.c1.ratio") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_config("name: [unterminated"), ConfigError);
  CHECK_THROWS_AS(parse_config("structure: {random: {count: 3, degree: 2, type: random-regular}}"), ConfigError);
}

TEST_CASE("validation reports every broken invariant") {
  auto weights = parse_config(replace(replace(sir_text, "initial-weight: 0.9", "initial-weight: 0.5"),
                                      "initial-weight: 0.1", "initial-weight: 0.3"));
  CHECK(mentions(validate(weights), "weights must sum to 1"));

  auto dangling = parse_config(replace(sir_text, "[Infected, Recovered, c2]", "[Infected, Recovered, c9]"));
  CHECK(mentions(validate(dangling), "c9"));

  auto unknown_type = parse_config(replace(sir_text, "[Infected, Recovered, c2]", "[Infected, Zombie, c2]"));
  CHECK(mentions(validate(unknown_type), "Zombie"));

  auto same_type = parse_config(replace(sir_text, "[Infected, Recovered, c2]", "[Infected, Infected, c2]"));
  CHECK_FALSE(validate(same_type).empty());

  auto bad_ratio = parse_config(replace(sir_text, "ratio: 0.1", "ratio: 1.5"));
  CHECK_FALSE(validate(bad_ratio).empty());

  auto odd_regular = parse_config(replace(sir_text, "count: 100", "count: 7"));
  odd_regular = parse_config(replace(serialize_config(odd_regular), "degree: 4", "degree: 3"));
  CHECK_FALSE(validate(odd_regular).empty());

  auto bad_range = parse_config(replace(sir_text, "age: [0, 100]", "age: [100, 0]"));
  CHECK_FALSE(validate(bad_range).empty());
}

TEST_CASE("influence maximization counts validate against the graph size") {
  const auto c = parse_config(scenarios::find_scenario("infmax")->fixture);
  CHECK(c.definitions.model_kind == ModelKind::custom);
  CHECK(validate(c, 4039).empty());
  CHECK_FALSE(validate(c, 4000).empty());
  CHECK(std::get<ChooseWithMetric>(*find(c.definitions.nodetypes, "Active_Spreader")) ==
        ChooseWithMetric{MetricName::pagerank, 100});
}

TEST_CASE("serialize then parse is the identity") {
  for (const auto& s : scenarios::all_scenarios()) {
    CAPTURE(s.name);
    const auto c = parse_config(s.fixture);
    const auto text = serialize_config(c);
    CHECK(parse_config(text) == c);
    CHECK(serialize_config(parse_config(text)) == text);
  }
  // awkward values survive too
  auto c = parse_config(sir_text);
  c.definitions.network_parameters.emplace_back("tiny", 1e-17);
  c.definitions.network_parameters.emplace_back("third", 1.0 / 3.0);
  c.definitions.network_parameters.emplace_back("whole", 2.0);
  c.definitions.network_parameters.emplace_back("n", std::int64_t{-3});
  c.definitions.network_parameters.emplace_back("looks_numeric", std::string("42"));
  c.definitions.network_parameters.emplace_back("word", std::string("yes"));
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("sweeps expand one factor at a time") {
  const auto trust = parse_config(scenarios::find_scenario("trust")->fixture);
  const auto variants = expand_sweep(trust);
  REQUIRE(variants.size() == 11);
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const auto* r = find(variants[i].config.definitions.network_parameters, "r_UT");
    REQUIRE(r);
    CHECK(*as_number(*r) == doctest::Approx(0.1 * static_cast<double>(i)));
    CHECK_FALSE(variants[i].config.sweep.has_value());
    // nothing else moved
    auto a = variants[i].config, b = trust;
    b.sweep.reset();
    for (auto* cfg : {&a, &b})
      for (auto& [k, v] : cfg->definitions.network_parameters)
        if (k == "r_UT") v = 0.0;
    CHECK(a == b);
  }
  CHECK(variants[4].label() == "r_UT=0.4");

  auto plain = parse_config(sir_text);
  const auto base = expand_sweep(plain);
  REQUIRE(base.size() == 1);
  CHECK(base[0].config == plain);

  auto two = parse_config(std::string(sir_text) + R"(sweep:
  definitions.compartments.c1.ratio: [0.2, 0.3]
  structure.random.degree: [6]
)");
  const auto ofat = expand_sweep(two);
  REQUIRE(ofat.size() == 3);
  auto ratio = [](const ProjectConfig& c) {
    return std::get<NodeStochasticSpec>(*find(c.definitions.compartments, "c1")).ratio;
  };
  auto degree = [](const ProjectConfig& c) { return std::get<RandomStructure>(c.structure).degree; };
  CHECK(ratio(ofat[0].config) == 0.2);
  CHECK(degree(ofat[0].config) == 4);
  CHECK(ratio(ofat[1].config) == 0.3);
  CHECK(degree(ofat[1].config) == 4);
  CHECK(ratio(ofat[2].config) == 0.1);  // never combined with a swept ratio
  CHECK(degree(ofat[2].config) == 6);

  auto broken = parse_config(std::string(sir_text) + "sweep:\n  definitions.compartments.c7.ratio: [0.2]\n");
  CHECK_FALSE(validate(broken).empty());
  CHECK_THROWS_AS(expand_sweep(broken), ConfigError);
}

TEST_CASE("population: weighted draw stays within binomial bounds") {
  const auto c = parse_config(sir_text);
  const double sd = std::sqrt(100 * 0.1 * 0.9);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const auto g = build_structure(c, rng);
    const auto pop = initialize_population(c, g, rng);
    std::map<std::string, int> counts;
    for (const auto& s : pop.states) ++counts[s];
    CHECK(counts["Susceptible"] + counts["Infected"] == 100);
    CHECK(counts["Recovered"] == 0);
    CHECK(std::abs(counts["Infected"] - 10.0) <= 3 * sd);
    for (NodeId v = 0; v < 100; ++v) {
      const double age = *as_number(*pop.attrs.node(v, "age"));
      REQUIRE((age >= 0 && age <= 100));
    }
  }
}

TEST_CASE("population: the same seed gives the same assignment") {
  const auto c = parse_config(scenarios::find_scenario("gabm")->fixture);
  Rng a(77), b(77);
  const auto ga = build_structure(c, a);
  const auto gb = build_structure(c, b);
  const auto pa = initialize_population(c, ga, a);
  const auto pb = initialize_population(c, gb, b);
  CHECK(ga == gb);
  CHECK(pa.states == pb.states);
  CHECK(pa.attrs == pb.attrs);
  for (NodeId v = 0; v < ga.node_count(); ++v) {
    const auto loc = std::get<std::string>(*pa.attrs.node(v, "location"));
    CHECK((loc == "home" || loc == "grid"));
  }
}

TEST_CASE("population: exact counts for every seed") {
  const auto c = parse_config(scenarios::find_scenario("trust")->fixture);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto g = build_structure(c, rng);
    const auto pop = initialize_population(c, g, rng);
    CHECK(std::count(pop.states.begin(), pop.states.end(), "I") == 341);
    CHECK(std::count(pop.states.begin(), pop.states.end(), "T") == 341);
    CHECK(std::count(pop.states.begin(), pop.states.end(), "U") == 342);
  }
}

TEST_CASE("population: top PageRank spreaders on the facebook graph") {
  const auto& fb = testsupport::facebook_graph();
  auto c = parse_config(scenarios::find_scenario("infmax")->fixture);
  std::get<FileStructure>(c.structure).path = fb.source.string();
  Rng rng(1);
  const auto g = build_structure(c, rng);
  const auto pop = initialize_population(c, g, rng);
  CHECK(std::count(pop.states.begin(), pop.states.end(), "Active_Spreader") == 100);
  CHECK(std::count(pop.states.begin(), pop.states.end(), "Inactive") == 3939);
  CHECK(std::count(pop.states.begin(), pop.states.end(), "Active") == 0);
  const auto top = top_k_by_metric(g, MetricName::pagerank, 100);
  for (NodeId v : top) CHECK(pop.states[v] == "Active_Spreader");
}

TEST_CASE("population: ids from a file") {
  testsupport::TempDir dir("fromfile");
  testsupport::spit(dir / "seeds.txt", "# seeds\n0\n 3 \n");
  const std::string text = R"(name: ff
structure:
  random: {type: random-regular, count: 6, degree: 2}
definitions:
  m:
    name: custom
    nodetypes:
      A:
        from-file: {path: seeds.txt}
      B:
        random-with-count: {count: 4}
)";
  const auto c = parse_config(text);
  Rng rng(3);
  const auto g = build_structure(c, rng, dir.path());
  const auto pop = initialize_population(c, g, rng, dir.path());
  CHECK(pop.states[0] == "A");
  CHECK(pop.states[3] == "A");
  CHECK(std::count(pop.states.begin(), pop.states.end(), "B") == 4);

  testsupport::spit(dir / "seeds.txt", "0\n9\n");
  CHECK_THROWS_AS(initialize_population(c, g, rng, dir.path()), ConfigError);
}
