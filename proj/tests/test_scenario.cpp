#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "test_util.hpp"

using namespace mcsim;
using namespace mcsim::test;

TEST_CASE("minimal document gets the documented defaults") {
    auto c = load_scenario(R"({"num_nodes": 1})");
    CHECK(c.num_nodes == 1);
    CHECK(c.num_interfaces == 3);
    CHECK(c.num_channels == 16);
    CHECK(c.radio_range_m == 250.0);
    CHECK(c.bitrate_bps == 2'000'000);
    CHECK(c.policy.kind == PolicyKind::Default);
    CHECK(c.hello.enabled);
    CHECK(c.hello.interval == 1'000'000);
    CHECK(c.hello.jitter_max == 100'000);
    CHECK(c.hello.allowed_hello_loss == 3);
}

TEST_CASE("unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(load_scenario(R"({"num_nodes": 1, "bogus": 3})"),
                         doctest::Contains("bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(
        load_scenario(R"({"num_nodes": 1, "hello": {"intervall_ms": 5}})"),
        doctest::Contains("intervall_ms"), ConfigError);
}

TEST_CASE("static map referencing a node out of range is a load error") {
    const char* doc = R"({
        "num_nodes": 5,
        "policy": {"variant": "static_map", "map": {"7": 0}, "fallback": 1}
    })";
    CHECK_THROWS_WITH_AS(load_scenario(doc), doctest::Contains("node 7"),
                         ConfigError);
}

TEST_CASE("explicit stamp outside the channel space is a load error") {
    const char* doc = R"({
        "num_nodes": 2,
        "num_channels": 2,
        "policy": {"variant": "explicit_stamp", "channel": 5}
    })";
    CHECK_THROWS_AS(load_scenario(doc), ConfigError);
}

TEST_CASE("explicit positions must cover every node") {
    const char* doc = R"({
        "num_nodes": 3,
        "positions": {"layout": "explicit", "coords": [[0, 0], [1, 1]]}
    })";
    CHECK_THROWS_WITH_AS(load_scenario(doc), doctest::Contains("positions"),
                         ConfigError);
}

TEST_CASE("initial channel overrides are validated per interface") {
    const char* doc = R"({
        "num_nodes": 2,
        "num_interfaces": 3,
        "initial_channels": {"default": 0, "overrides": {"1": [1, 2]}}
    })";
    CHECK_THROWS_AS(load_scenario(doc), ConfigError);
}

TEST_CASE("load -> serialize -> load round-trips to an equal config") {
    std::vector<std::string> docs = {
        R"({"num_nodes": 1})",
        R"({
            "num_nodes": 8, "num_interfaces": 2, "num_channels": 4,
            "radio_range_m": 120.5, "bitrate_bps": 1000000,
            "sim_duration_ms": 30000, "seed": 42,
            "positions": {"layout": "random", "width_m": 300, "height_m": 200},
            "hello": {"enabled": false, "interval_ms": 500, "jitter_ms": 10,
                      "allowed_hello_loss": 2, "size_bytes": 32},
            "policy": {"variant": "static_map", "map": {"7": 0}, "fallback": 1},
            "initial_channels": {"default": 1, "overrides": {"0": [2, 3]}},
            "data_broadcasts": [{"node": 0, "at_ms": 100, "size_bytes": 128}],
            "trace_path": "out.tr"
        })",
        R"({
            "num_nodes": 3,
            "positions": {"layout": "explicit", "coords": [[0,0],[10,20],[30.5,40]]},
            "policy": {"variant": "header_driven", "stamp": {"0": 2}}
        })",
        R"({"num_nodes": 2, "policy": {"variant": "explicit_stamp", "channel": 3}})",
    };
    for (const auto& doc : docs) {
        CAPTURE(doc);
        ScenarioConfig first = load_scenario(doc);
        ScenarioConfig second = load_scenario(serialize_scenario(first));
        CHECK(first == second);
    }
}

TEST_CASE("grid and random position generators are deterministic in the seed") {
    ScenarioConfig c;
    c.num_nodes = 9;
    c.positions.layout = PositionSpec::Layout::Random;
    c.seed = 5;
    auto a = resolve_positions(c);
    auto b = resolve_positions(c);
    CHECK(a == b);
    c.seed = 6;
    CHECK(resolve_positions(c) != a);

    c.positions.layout = PositionSpec::Layout::Grid;
    c.positions.spacing_m = 100;
    auto grid = resolve_positions(c);
    REQUIRE(grid.size() == 9);
    CHECK(grid[0] == Position{0, 0});
    CHECK(grid[4] == Position{100, 100}); // 3x3 grid, row-major
}

TEST_CASE("two nodes out of range never discover each other") {
    ScenarioConfig c;
    c.num_nodes = 2;
    c.positions.layout = PositionSpec::Layout::Explicit;
    c.positions.coords = {{0, 0}, {1000, 0}};
    c.sim_duration = 5'000'000;
    auto out = run_scenario(c);
    CHECK(out.summary.neighbors[0].empty());
    CHECK(out.summary.neighbors[1].empty());
}

TEST_CASE("channel partition: the mapped node is isolated") {
    // all nodes mutually in range; node 7 alone on channel 0
    ScenarioConfig c;
    c.num_nodes = 8;
    c.positions.layout = PositionSpec::Layout::Grid;
    c.positions.spacing_m = 50;
    c.policy.kind = PolicyKind::StaticMap;
    c.policy.node_map = {{7, 0}};
    c.policy.fallback = 1;
    c.sim_duration = 10'000'000;
    c.seed = 1;
    auto out = run_scenario(c);

    CHECK(out.summary.neighbors[7].empty());
    CHECK(out.summary.per_node[7].receptions == 0);
    for (NodeId n = 0; n < 7; ++n) {
        for (const auto& e : out.summary.neighbors[n]) CHECK(e.neighbor != 7);
    }
}

TEST_CASE("identical config and seed give byte-identical traces") {
    ScenarioConfig c;
    c.num_nodes = 4;
    c.positions.layout = PositionSpec::Layout::Grid;
    c.positions.spacing_m = 80;
    c.sim_duration = 3'000'000;
    c.seed = 21;
    auto a = run_scenario(c);
    auto b = run_scenario(c);
    CHECK(a.trace_text == b.trace_text);
    c.seed = 22;
    CHECK(run_scenario(c).trace_text != a.trace_text);
}

TEST_CASE("unwritable trace path fails at startup") {
    ScenarioConfig c;
    c.num_nodes = 1;
    c.trace_path = "/nonexistent-dir/run.tr";
    CHECK_THROWS_AS(build_and_run(c), std::runtime_error);
}

TEST_CASE("trace file output matches the in-memory trace") {
    ScenarioConfig c;
    c.num_nodes = 2;
    c.positions.layout = PositionSpec::Layout::Explicit;
    c.positions.coords = {{0, 0}, {100, 0}};
    c.sim_duration = 2'000'000;
    auto in_memory = run_scenario(c);

    c.trace_path = "test_scenario_tmp.tr";
    build_and_run(c);
    std::ifstream in(c.trace_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == in_memory.trace_text);
    std::remove(c.trace_path.c_str());
}
