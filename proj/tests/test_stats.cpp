#include <doctest.h>

#include "test_util.hpp"

using namespace mcsim;
using namespace mcsim::test;

namespace {

ScenarioConfig busy_little_network(std::uint64_t seed) {
    // everyone on one channel: plenty of receptions, duplicates, collisions
    ScenarioConfig c;
    c.num_nodes = 5;
    c.num_interfaces = 2;
    c.num_channels = 4;
    c.positions.layout = PositionSpec::Layout::Grid;
    c.positions.spacing_m = 60;
    c.initial_channels.default_channel = 1;
    c.sim_duration = 8'000'000;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("counter conservation: every delivery ends in exactly one bucket") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        CAPTURE(seed);
        auto out = run_scenario(busy_little_network(seed));
        const CounterSet& g = out.summary.global;
        CHECK(g.deliver_starts ==
              g.receptions + g.drops_collision + g.drops_busy + g.drops_mismatch);
        CHECK(g.deliver_starts > 0);
    }
}

TEST_CASE("rollups equal the sum of their parts") {
    auto out = run_scenario(busy_little_network(9));
    CounterSet from_nodes;
    for (const auto& node_counters : out.summary.per_node) from_nodes += node_counters;
    CHECK(from_nodes == out.summary.global);
    for (std::size_t n = 0; n < out.summary.per_iface.size(); ++n) {
        CounterSet from_ifaces;
        for (const auto& c : out.summary.per_iface[n]) from_ifaces += c;
        CHECK(from_ifaces == out.summary.per_node[n]);
    }
}

TEST_CASE("receptions are bounded by sends times potential listeners") {
    auto out = run_scenario(busy_little_network(3));
    const CounterSet& g = out.summary.global;
    const auto bound = g.sends * (5 - 1) * 2;
    CHECK(g.receptions <= bound);
}

TEST_CASE("discovery completeness: single node is vacuously complete") {
    ScenarioConfig c;
    c.num_nodes = 1;
    auto ideal = ideal_neighbor_relation(c);
    CHECK(ideal.empty());
    auto out = run_scenario(c);
    CHECK(discovery_completeness(out.summary, ideal) == 1.0);
}

TEST_CASE("ideal relation is channel aware, not just position aware") {
    // 2 nodes in range but on disjoint fixed channels: the ideal relation is
    // empty, so completeness is 1.0 even though positions alone would claim
    // a discoverable pair.
    ScenarioConfig c;
    c.num_nodes = 2;
    c.num_interfaces = 1;
    c.num_channels = 4;
    c.positions.layout = PositionSpec::Layout::Explicit;
    c.positions.coords = {{0, 0}, {100, 0}};
    c.initial_channels.overrides = {{0, {1}}, {1, {2}}};
    c.sim_duration = 5'000'000;
    auto ideal = ideal_neighbor_relation(c);
    CHECK(ideal.empty());
    auto out = run_scenario(c);
    CHECK(out.summary.global.receptions == 0);
    CHECK(discovery_completeness(out.summary, ideal) == 1.0);
}

TEST_CASE("ideal relation under the partition map excludes the isolated node") {
    ScenarioConfig c;
    c.num_nodes = 8;
    c.positions.layout = PositionSpec::Layout::Grid;
    c.positions.spacing_m = 50;
    c.policy.kind = PolicyKind::StaticMap;
    c.policy.node_map = {{7, 0}};
    c.policy.fallback = 1;
    auto ideal = ideal_neighbor_relation(c);
    CHECK(ideal.size() == 7 * 6); // ordered pairs among the fallback nodes
    for (const auto& [listener, heard] : ideal) {
        CHECK(listener != 7);
        CHECK(heard != 7);
    }
}

TEST_CASE("completeness reaches 1.0 and is monotone in duration") {
    ScenarioConfig c = busy_little_network(4);
    auto ideal = ideal_neighbor_relation(c);
    REQUIRE_FALSE(ideal.empty());
    double prev = -1.0;
    for (SimTime d : {500'000, 2'000'000, 8'000'000}) {
        c.sim_duration = d;
        auto out = run_scenario(c);
        double completeness = discovery_completeness(out.summary, ideal);
        CHECK(completeness >= prev);
        prev = completeness;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("json-lines summary has one record per node plus a global record") {
    auto out = run_scenario(busy_little_network(2));
    const std::string lines = summary_to_json_lines(out.summary);
    std::size_t count = 0;
    for (char ch : lines) {
        if (ch == '\n') ++count;
    }
    CHECK(count == 5 + 1);
    CHECK(lines.find("\"record\":\"global\"") != std::string::npos);
}
