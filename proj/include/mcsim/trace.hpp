#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcsim/packet.hpp"
#include "mcsim/types.hpp"

namespace mcsim {

enum class TraceOp { Send, Recv, Drop, Tune };
enum class DropReason { Collision, Busy, Mismatch };

const char* to_string(TraceOp op);
const char* to_string(DropReason r);
const char* to_string(PacketType t);

/// One line of the run trace:
///   <op> <time> <node> <iface> <ch> <pkt_type> <src> <seq> [<reason>]
/// single-space separated, newline-terminated, integer-microsecond times.
/// "tune" lines use sentinel packet fields (src = node, seq = 0).
struct TraceRecord {
    TraceOp op = TraceOp::Send;
    SimTime time = 0;
    NodeId node = 0;
    IfaceId iface = 0;
    ChannelId channel = 0;
    PacketType pkt_type = PacketType::Hello;
    NodeId src = 0;
    std::uint32_t seq = 0;
    std::optional<DropReason> reason;

    bool operator==(const TraceRecord&) const = default;

    std::string format() const; // no trailing newline
};

/// Exact inverse of TraceRecord::format. Returns nullopt and fills *err on
/// a malformed line.
std::optional<TraceRecord> parse_trace_line(const std::string& line, std::string* err);

/// Single-writer trace sink; one line per record, appended in event order.
class TraceWriter {
public:
    /// Opens path for writing; throws std::runtime_error if unwritable.
    explicit TraceWriter(const std::string& path);
    /// Writes to an externally owned stream (tests, in-memory runs).
    explicit TraceWriter(std::ostream& sink);
    /// Discards everything.
    TraceWriter();
    ~TraceWriter();

    void emit(const TraceRecord& rec);
    void flush();

private:
    std::unique_ptr<std::ostream> owned_;
    std::ostream* sink_ = nullptr; // null = discard
};

struct AuditViolation {
    std::size_t line_no = 0; // 1-based; 0 = whole-file
    std::string message;
};

struct AuditReport {
    std::size_t lines = 0;
    std::vector<AuditViolation> violations;
    bool clean() const { return violations.empty(); }
};

/// Post-hoc trace audit. Checks, line by line:
///  - every line parses;
///  - timestamps are non-decreasing;
///  - every "r" is preceded by an "s" with the same (src, seq, channel, type);
///  - every "r" channel equals the receiving interface's tuned channel as
///    reconstructed from the "tune" history.
AuditReport audit_trace(std::istream& in);
AuditReport audit_trace_file(const std::string& path);

std::vector<TraceRecord> parse_trace(std::istream& in); // throws on malformed line
std::vector<TraceRecord> parse_trace_file(const std::string& path);

} // namespace mcsim
