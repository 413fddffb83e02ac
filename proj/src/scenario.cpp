#include "mcsim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mcsim/radio.hpp"
#include "mcsim/rng.hpp"

namespace mcsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            fail("unknown key '" + where + it.key() + "'");
        }
    }
}

template <typename T>
T get_or(const json& obj, const std::string& where, const std::string& key,
         T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail("bad value for key '" + where + key + "'");
    }
}

NodeId parse_node_key(const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(key, &pos);
        if (pos != key.size() || v < 0) throw std::invalid_argument(key);
        return static_cast<NodeId>(v);
    } catch (const std::exception&) {
        fail("bad node id '" + key + "' in '" + where + "'");
    }
}

PositionSpec parse_positions(const json& j) {
    PositionSpec spec;
    if (!j.is_object()) fail("'positions' must be an object");
    const std::string layout = get_or<std::string>(j, "positions.", "layout", "");
    if (layout == "explicit") {
        require_keys(j, "positions.", {"layout", "coords"});
        if (!j.contains("coords")) fail("'positions.coords' missing");
        spec.layout = PositionSpec::Layout::Explicit;
        for (const auto& c : j.at("coords")) {
            if (!c.is_array() || c.size() != 2) {
                fail("'positions.coords' entries must be [x, y]");
            }
            spec.coords.push_back({c[0].get<double>(), c[1].get<double>()});
        }
    } else if (layout == "grid") {
        require_keys(j, "positions.", {"layout", "spacing_m"});
        spec.layout = PositionSpec::Layout::Grid;
        spec.spacing_m = get_or<double>(j, "positions.", "spacing_m", 100.0);
        if (spec.spacing_m <= 0) fail("'positions.spacing_m' must be > 0");
    } else if (layout == "random") {
        require_keys(j, "positions.", {"layout", "width_m", "height_m"});
        spec.layout = PositionSpec::Layout::Random;
        spec.width_m = get_or<double>(j, "positions.", "width_m", 500.0);
        spec.height_m = get_or<double>(j, "positions.", "height_m", 500.0);
        if (spec.width_m <= 0 || spec.height_m <= 0) {
            fail("'positions' dimensions must be > 0");
        }
    } else {
        fail("'positions.layout' must be one of explicit|grid|random");
    }
    return spec;
}

HelloConfig parse_hello(const json& j) {
    HelloConfig cfg;
    if (!j.is_object()) fail("'hello' must be an object");
    require_keys(j, "hello.",
                 {"enabled", "interval_ms", "jitter_ms", "allowed_hello_loss",
                  "size_bytes"});
    cfg.enabled = get_or<bool>(j, "hello.", "enabled", cfg.enabled);
    cfg.interval = ms_to_us(get_or<std::int64_t>(j, "hello.", "interval_ms", 1000));
    cfg.jitter_max = ms_to_us(get_or<std::int64_t>(j, "hello.", "jitter_ms", 100));
    cfg.allowed_hello_loss =
        get_or<int>(j, "hello.", "allowed_hello_loss", cfg.allowed_hello_loss);
    cfg.hello_size_bytes =
        get_or<std::uint32_t>(j, "hello.", "size_bytes", cfg.hello_size_bytes);
    if (cfg.interval <= 0) fail("'hello.interval_ms' must be > 0");
    if (cfg.jitter_max < 0) fail("'hello.jitter_ms' must be >= 0");
    if (cfg.allowed_hello_loss < 1) fail("'hello.allowed_hello_loss' must be >= 1");
    if (cfg.hello_size_bytes == 0) fail("'hello.size_bytes' must be > 0");
    return cfg;
}

ChannelPolicy parse_policy(const json& j) {
    ChannelPolicy policy;
    if (!j.is_object()) fail("'policy' must be an object");
    const std::string variant = get_or<std::string>(j, "policy.", "variant", "default");
    if (variant == "default") {
        require_keys(j, "policy.", {"variant"});
        policy.kind = PolicyKind::Default;
    } else if (variant == "explicit_stamp") {
        require_keys(j, "policy.", {"variant", "channel"});
        policy.kind = PolicyKind::ExplicitStamp;
        if (!j.contains("channel")) fail("'policy.channel' missing");
        policy.explicit_channel = get_or<ChannelId>(j, "policy.", "channel", 0);
    } else if (variant == "static_map") {
        require_keys(j, "policy.", {"variant", "map", "fallback"});
        policy.kind = PolicyKind::StaticMap;
        if (!j.contains("map")) fail("'policy.map' missing");
        for (auto it = j.at("map").begin(); it != j.at("map").end(); ++it) {
            policy.node_map[parse_node_key(it.key(), "policy.map")] =
                it.value().get<ChannelId>();
        }
        policy.fallback = get_or<ChannelId>(j, "policy.", "fallback", 0);
    } else if (variant == "header_driven") {
        require_keys(j, "policy.", {"variant", "stamp"});
        policy.kind = PolicyKind::HeaderDriven;
        if (j.contains("stamp")) {
            for (auto it = j.at("stamp").begin(); it != j.at("stamp").end(); ++it) {
                policy.stamps[parse_node_key(it.key(), "policy.stamp")] =
                    it.value().get<ChannelId>();
            }
        }
    } else {
        fail("'policy.variant' must be one of "
             "default|explicit_stamp|static_map|header_driven");
    }
    return policy;
}

InitialChannels parse_initial_channels(const json& j) {
    InitialChannels init;
    if (j.is_number_integer()) {
        init.default_channel = j.get<ChannelId>();
        return init;
    }
    if (!j.is_object()) fail("'initial_channels' must be an integer or object");
    require_keys(j, "initial_channels.", {"default", "overrides"});
    init.default_channel = get_or<ChannelId>(j, "initial_channels.", "default", 0);
    if (j.contains("overrides")) {
        for (auto it = j.at("overrides").begin(); it != j.at("overrides").end(); ++it) {
            const NodeId node = parse_node_key(it.key(), "initial_channels.overrides");
            std::vector<ChannelId> channels;
            for (const auto& c : it.value()) channels.push_back(c.get<ChannelId>());
            init.overrides[node] = std::move(channels);
        }
    }
    return init;
}

void check_channel(ChannelId ch, ChannelId num_channels, const std::string& what) {
    if (ch < 0 || ch >= num_channels) {
        fail(what + ": channel " + std::to_string(ch) + " out of range [0, " +
             std::to_string(num_channels) + ")");
    }
}

void check_node(NodeId node, int num_nodes, const std::string& what) {
    if (node < 0 || node >= num_nodes) {
        fail(what + ": node " + std::to_string(node) + " out of range [0, " +
             std::to_string(num_nodes) + ")");
    }
}

void validate(const ScenarioConfig& c) {
    if (c.num_nodes < 1) fail("'num_nodes' must be >= 1");
    if (c.num_interfaces < 1) fail("'num_interfaces' must be >= 1");
    if (c.num_channels < 1) fail("'num_channels' must be >= 1");
    if (c.radio_range_m < 0) fail("'radio_range_m' must be >= 0");
    if (c.bitrate_bps <= 0) fail("'bitrate_bps' must be > 0");
    if (c.sim_duration < 0) fail("'sim_duration_ms' must be >= 0");
    if (c.positions.layout == PositionSpec::Layout::Explicit &&
        static_cast<int>(c.positions.coords.size()) != c.num_nodes) {
        fail("'positions.coords' has " + std::to_string(c.positions.coords.size()) +
             " entries, expected " + std::to_string(c.num_nodes));
    }
    if (c.policy.kind == PolicyKind::ExplicitStamp) {
        check_channel(c.policy.explicit_channel, c.num_channels, "'policy.channel'");
    }
    for (const auto& [node, ch] : c.policy.node_map) {
        check_node(node, c.num_nodes, "'policy.map'");
        check_channel(ch, c.num_channels, "'policy.map'");
    }
    if (c.policy.kind == PolicyKind::StaticMap) {
        check_channel(c.policy.fallback, c.num_channels, "'policy.fallback'");
    }
    for (const auto& [node, ch] : c.policy.stamps) {
        check_node(node, c.num_nodes, "'policy.stamp'");
        check_channel(ch, c.num_channels, "'policy.stamp'");
    }
    check_channel(c.initial_channels.default_channel, c.num_channels,
                  "'initial_channels.default'");
    for (const auto& [node, channels] : c.initial_channels.overrides) {
        check_node(node, c.num_nodes, "'initial_channels.overrides'");
        if (static_cast<int>(channels.size()) != c.num_interfaces) {
            fail("'initial_channels.overrides': node " + std::to_string(node) +
                 " lists " + std::to_string(channels.size()) +
                 " channels, expected " + std::to_string(c.num_interfaces));
        }
        for (ChannelId ch : channels) {
            check_channel(ch, c.num_channels, "'initial_channels.overrides'");
        }
    }
    for (const auto& b : c.data_broadcasts) {
        check_node(b.node, c.num_nodes, "'data_broadcasts'");
        if (b.at < 0) fail("'data_broadcasts': at_ms must be >= 0");
        if (b.size_bytes == 0) fail("'data_broadcasts': size_bytes must be > 0");
    }
}

} // namespace

ScenarioConfig load_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("scenario document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("scenario document must be a JSON object");
    require_keys(j, "",
                 {"num_nodes", "num_interfaces", "num_channels", "radio_range_m",
                  "bitrate_bps", "sim_duration_ms", "seed", "positions", "hello",
                  "policy", "initial_channels", "data_broadcasts", "trace_path"});

    ScenarioConfig c;
    if (!j.contains("num_nodes")) fail("'num_nodes' missing");
    c.num_nodes = get_or<int>(j, "", "num_nodes", 1);
    c.num_interfaces = get_or<int>(j, "", "num_interfaces", c.num_interfaces);
    c.num_channels = get_or<ChannelId>(j, "", "num_channels", c.num_channels);
    c.radio_range_m = get_or<double>(j, "", "radio_range_m", c.radio_range_m);
    c.bitrate_bps = get_or<std::int64_t>(j, "", "bitrate_bps", c.bitrate_bps);
    c.sim_duration = ms_to_us(get_or<std::int64_t>(j, "", "sim_duration_ms", 10000));
    c.seed = get_or<std::uint64_t>(j, "", "seed", 0);
    if (j.contains("positions")) c.positions = parse_positions(j.at("positions"));
    if (j.contains("hello")) c.hello = parse_hello(j.at("hello"));
    if (j.contains("policy")) c.policy = parse_policy(j.at("policy"));
    if (j.contains("initial_channels")) {
        c.initial_channels = parse_initial_channels(j.at("initial_channels"));
    }
    if (j.contains("data_broadcasts")) {
        if (!j.at("data_broadcasts").is_array()) {
            fail("'data_broadcasts' must be an array");
        }
        for (const auto& b : j.at("data_broadcasts")) {
            require_keys(b, "data_broadcasts.", {"node", "at_ms", "size_bytes"});
            DataBroadcastSpec spec;
            spec.node = get_or<NodeId>(b, "data_broadcasts.", "node", 0);
            spec.at = ms_to_us(get_or<std::int64_t>(b, "data_broadcasts.", "at_ms", 0));
            spec.size_bytes =
                get_or<std::uint32_t>(b, "data_broadcasts.", "size_bytes", 64);
            c.data_broadcasts.push_back(spec);
        }
    }
    c.trace_path = get_or<std::string>(j, "", "trace_path", "");
    validate(c);
    return c;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) fail("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig& c) {
    json j;
    j["num_nodes"] = c.num_nodes;
    j["num_interfaces"] = c.num_interfaces;
    j["num_channels"] = c.num_channels;
    j["radio_range_m"] = c.radio_range_m;
    j["bitrate_bps"] = c.bitrate_bps;
    j["sim_duration_ms"] = c.sim_duration / 1000;
    j["seed"] = c.seed;

    json pos;
    switch (c.positions.layout) {
    case PositionSpec::Layout::Explicit: {
        pos["layout"] = "explicit";
        json coords = json::array();
        for (const auto& p : c.positions.coords) coords.push_back({p.x, p.y});
        pos["coords"] = coords;
        break;
    }
    case PositionSpec::Layout::Grid:
        pos["layout"] = "grid";
        pos["spacing_m"] = c.positions.spacing_m;
        break;
    case PositionSpec::Layout::Random:
        pos["layout"] = "random";
        pos["width_m"] = c.positions.width_m;
        pos["height_m"] = c.positions.height_m;
        break;
    }
    j["positions"] = pos;

    j["hello"] = {{"enabled", c.hello.enabled},
                  {"interval_ms", c.hello.interval / 1000},
                  {"jitter_ms", c.hello.jitter_max / 1000},
                  {"allowed_hello_loss", c.hello.allowed_hello_loss},
                  {"size_bytes", c.hello.hello_size_bytes}};

    json pol;
    switch (c.policy.kind) {
    case PolicyKind::Default:
        pol["variant"] = "default";
        break;
    case PolicyKind::ExplicitStamp:
        pol["variant"] = "explicit_stamp";
        pol["channel"] = c.policy.explicit_channel;
        break;
    case PolicyKind::StaticMap: {
        pol["variant"] = "static_map";
        json map = json::object();
        for (const auto& [node, ch] : c.policy.node_map) {
            map[std::to_string(node)] = ch;
        }
        pol["map"] = map;
        pol["fallback"] = c.policy.fallback;
        break;
    }
    case PolicyKind::HeaderDriven: {
        pol["variant"] = "header_driven";
        json stamp = json::object();
        for (const auto& [node, ch] : c.policy.stamps) {
            stamp[std::to_string(node)] = ch;
        }
        pol["stamp"] = stamp;
        break;
    }
    }
    j["policy"] = pol;

    json init;
    init["default"] = c.initial_channels.default_channel;
    json overrides = json::object();
    for (const auto& [node, channels] : c.initial_channels.overrides) {
        overrides[std::to_string(node)] = channels;
    }
    init["overrides"] = overrides;
    j["initial_channels"] = init;

    json broadcasts = json::array();
    for (const auto& b : c.data_broadcasts) {
        broadcasts.push_back({{"node", b.node},
                              {"at_ms", b.at / 1000},
                              {"size_bytes", b.size_bytes}});
    }
    j["data_broadcasts"] = broadcasts;
    j["trace_path"] = c.trace_path;
    return j.dump(2);
}

std::vector<Position> resolve_positions(const ScenarioConfig& c) {
    std::vector<Position> out;
    switch (c.positions.layout) {
    case PositionSpec::Layout::Explicit:
        out = c.positions.coords;
        break;
    case PositionSpec::Layout::Grid: {
        const int side = static_cast<int>(std::ceil(std::sqrt(c.num_nodes)));
        for (int n = 0; n < c.num_nodes; ++n) {
            out.push_back({(n % side) * c.positions.spacing_m,
                           (n / side) * c.positions.spacing_m});
        }
        break;
    }
    case PositionSpec::Layout::Random: {
        NodeRng rng(c.seed, kPositionStream);
        for (int n = 0; n < c.num_nodes; ++n) {
            out.push_back({rng.uniform_real(0.0, c.positions.width_m),
                           rng.uniform_real(0.0, c.positions.height_m)});
        }
        break;
    }
    }
    return out;
}

std::vector<std::vector<ChannelId>> initial_tuning(const ScenarioConfig& c) {
    std::vector<std::vector<ChannelId>> tuning(c.num_nodes);
    for (NodeId n = 0; n < c.num_nodes; ++n) {
        auto it = c.initial_channels.overrides.find(n);
        if (it != c.initial_channels.overrides.end()) {
            tuning[n] = it->second;
        } else {
            tuning[n].assign(c.num_interfaces, c.initial_channels.default_channel);
        }
        // the static map assigns every interface of the node
        if (auto assigned = c.policy.static_assignment(n)) {
            tuning[n].assign(c.num_interfaces, *assigned);
        }
    }
    return tuning;
}

NeighborRelation ideal_neighbor_relation(const ScenarioConfig& c) {
    const auto positions = resolve_positions(c);
    const auto tuning = initial_tuning(c);

    std::vector<std::set<ChannelId>> tx_channels(c.num_nodes);
    std::vector<std::set<ChannelId>> rx_channels(c.num_nodes);
    for (NodeId n = 0; n < c.num_nodes; ++n) {
        for (ChannelId ch : tuning[n]) {
            rx_channels[n].insert(ch);
            tx_channels[n].insert(c.policy.select_tx_channel(n, ch));
        }
    }

    NeighborRelation ideal;
    for (NodeId listener = 0; listener < c.num_nodes; ++listener) {
        for (NodeId heard = 0; heard < c.num_nodes; ++heard) {
            if (listener == heard) continue;
            if (!Medium::in_range(positions[listener], positions[heard],
                                  c.radio_range_m)) {
                continue;
            }
            bool shared = false;
            for (ChannelId ch : tx_channels[heard]) {
                if (rx_channels[listener].count(ch)) {
                    shared = true;
                    break;
                }
            }
            if (shared) ideal.insert({listener, heard});
        }
    }
    return ideal;
}

} // namespace mcsim
