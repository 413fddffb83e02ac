#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcsim/types.hpp"

namespace mcsim {

struct CounterSet {
    std::uint64_t sends = 0;
    std::uint64_t receptions = 0;
    std::uint64_t drops_collision = 0;
    std::uint64_t drops_busy = 0;     // receiver busy at delivery start
    std::uint64_t drops_mismatch = 0; // channel mismatch / corrupted by retune
    std::uint64_t duplicates = 0;
    std::uint64_t retunes = 0;
    std::uint64_t tx_drops_busy = 0;  // transmit request on a busy interface
    std::uint64_t deliver_starts = 0;

    CounterSet& operator+=(const CounterSet& o);
    bool operator==(const CounterSet&) const = default;
};

/// Per-(node, iface) counters; rollups are computed sums, so they are equal
/// to the sum of their parts by construction.
class StatsCollector {
public:
    void init(int num_nodes, int num_ifaces);

    CounterSet& at(NodeId node, IfaceId iface);
    const CounterSet& at(NodeId node, IfaceId iface) const;

    CounterSet node_total(NodeId node) const;
    CounterSet global() const;

    int num_nodes() const { return static_cast<int>(per_iface_.size()); }
    int num_ifaces() const { return num_ifaces_; }

private:
    std::vector<std::vector<CounterSet>> per_iface_;
    int num_ifaces_ = 0;
};

struct NeighborSnapshot {
    NodeId neighbor = 0;
    SimTime last_heard = 0;
    IfaceId heard_on_iface = 0;
    ChannelId heard_on_channel = 0;
    bool operator==(const NeighborSnapshot&) const = default;
};

struct RunSummary {
    std::vector<std::vector<CounterSet>> per_iface; // [node][iface]
    std::vector<CounterSet> per_node;
    CounterSet global;
    std::vector<std::vector<NeighborSnapshot>> neighbors; // [node], sorted by id
    SimTime sim_end = 0;
    std::uint64_t executed_events = 0;
    double wall_seconds = 0.0;
};

RunSummary make_summary(const StatsCollector& stats);

/// Directed pairs (listener, heard): listener should end up with `heard`
/// in its neighbor table.
using NeighborRelation = std::set<std::pair<NodeId, NodeId>>;

/// Fraction of the ideal relation actually present in the final neighbor
/// tables; 1.0 when the ideal relation is empty.
double discovery_completeness(const RunSummary& summary, const NeighborRelation& ideal);

std::string summary_to_text(const RunSummary& summary);
/// One self-describing JSON record per node plus one global record.
std::string summary_to_json_lines(const RunSummary& summary);

} // namespace mcsim
