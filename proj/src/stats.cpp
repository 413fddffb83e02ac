#include "mcsim/stats.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace mcsim {

CounterSet& CounterSet::operator+=(const CounterSet& o) {
    sends += o.sends;
    receptions += o.receptions;
    drops_collision += o.drops_collision;
    drops_busy += o.drops_busy;
    drops_mismatch += o.drops_mismatch;
    duplicates += o.duplicates;
    retunes += o.retunes;
    tx_drops_busy += o.tx_drops_busy;
    deliver_starts += o.deliver_starts;
    return *this;
}

void StatsCollector::init(int num_nodes, int num_ifaces) {
    num_ifaces_ = num_ifaces;
    per_iface_.assign(num_nodes, std::vector<CounterSet>(num_ifaces));
}

CounterSet& StatsCollector::at(NodeId node, IfaceId iface) {
    return per_iface_.at(node).at(iface);
}

const CounterSet& StatsCollector::at(NodeId node, IfaceId iface) const {
    return per_iface_.at(node).at(iface);
}

CounterSet StatsCollector::node_total(NodeId node) const {
    CounterSet total;
    for (const auto& c : per_iface_.at(node)) total += c;
    return total;
}

CounterSet StatsCollector::global() const {
    CounterSet total;
    for (int n = 0; n < num_nodes(); ++n) total += node_total(n);
    return total;
}

RunSummary make_summary(const StatsCollector& stats) {
    RunSummary s;
    s.per_iface.resize(stats.num_nodes());
    for (int n = 0; n < stats.num_nodes(); ++n) {
        for (int i = 0; i < stats.num_ifaces(); ++i) {
            s.per_iface[n].push_back(stats.at(n, i));
        }
        s.per_node.push_back(stats.node_total(n));
    }
    s.global = stats.global();
    s.neighbors.resize(stats.num_nodes());
    return s;
}

double discovery_completeness(const RunSummary& summary, const NeighborRelation& ideal) {
    if (ideal.empty()) return 1.0;
    std::size_t hit = 0;
    for (NodeId n = 0; n < static_cast<NodeId>(summary.neighbors.size()); ++n) {
        for (const auto& entry : summary.neighbors[n]) {
            if (ideal.count({n, entry.neighbor})) ++hit;
        }
    }
    return static_cast<double>(hit) / static_cast<double>(ideal.size());
}

namespace {

nlohmann::json counters_json(const CounterSet& c) {
    return {{"sends", c.sends},
            {"receptions", c.receptions},
            {"drops_collision", c.drops_collision},
            {"drops_busy", c.drops_busy},
            {"drops_mismatch", c.drops_mismatch},
            {"duplicates", c.duplicates},
            {"retunes", c.retunes},
            {"tx_drops_busy", c.tx_drops_busy},
            {"deliver_starts", c.deliver_starts}};
}

} // namespace

std::string summary_to_text(const RunSummary& s) {
    std::ostringstream os;
    os << "sim_end_us " << s.sim_end << " events " << s.executed_events
       << " wall_s " << s.wall_seconds << '\n';
    for (std::size_t n = 0; n < s.per_node.size(); ++n) {
        const CounterSet& c = s.per_node[n];
        os << "node " << n << ": sends " << c.sends << " recv " << c.receptions
           << " coll " << c.drops_collision << " busy " << c.drops_busy
           << " mism " << c.drops_mismatch << " dup " << c.duplicates
           << " retunes " << c.retunes << " neighbors [";
        for (std::size_t k = 0; k < s.neighbors[n].size(); ++k) {
            if (k) os << ' ';
            os << s.neighbors[n][k].neighbor;
        }
        os << "]\n";
    }
    const CounterSet& g = s.global;
    os << "global: sends " << g.sends << " recv " << g.receptions << " coll "
       << g.drops_collision << " busy " << g.drops_busy << " mism "
       << g.drops_mismatch << " dup " << g.duplicates << " retunes "
       << g.retunes << '\n';
    return os.str();
}

std::string summary_to_json_lines(const RunSummary& s) {
    std::ostringstream os;
    for (std::size_t n = 0; n < s.per_node.size(); ++n) {
        nlohmann::json j{{"record", "node"}, {"node", n}};
        j["counters"] = counters_json(s.per_node[n]);
        nlohmann::json neigh = nlohmann::json::array();
        for (const auto& e : s.neighbors[n]) {
            neigh.push_back({{"neighbor", e.neighbor},
                             {"last_heard_us", e.last_heard},
                             {"iface", e.heard_on_iface},
                             {"channel", e.heard_on_channel}});
        }
        j["neighbors"] = neigh;
        os << j.dump() << '\n';
    }
    nlohmann::json g{{"record", "global"},
                     {"sim_end_us", s.sim_end},
                     {"executed_events", s.executed_events},
                     {"wall_seconds", s.wall_seconds}};
    g["counters"] = counters_json(s.global);
    os << g.dump() << '\n';
    return os.str();
}

} // namespace mcsim
