#include "mcsim/trace.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace mcsim {

const char* to_string(TraceOp op) {
    switch (op) {
    case TraceOp::Send: return "s";
    case TraceOp::Recv: return "r";
    case TraceOp::Drop: return "d";
    case TraceOp::Tune: return "tune";
    }
    return "?";
}

const char* to_string(DropReason r) {
    switch (r) {
    case DropReason::Collision: return "COLLISION";
    case DropReason::Busy: return "BUSY";
    case DropReason::Mismatch: return "MISMATCH";
    }
    return "?";
}

const char* to_string(PacketType t) {
    return t == PacketType::Hello ? "HELLO" : "DATA";
}

std::string TraceRecord::format() const {
    std::ostringstream os;
    os << to_string(op) << ' ' << time << ' ' << node << ' ' << iface << ' '
       << channel << ' ' << to_string(pkt_type) << ' ' << src << ' ' << seq;
    if (reason) os << ' ' << to_string(*reason);
    return os.str();
}

namespace {

bool next_token(const std::string& line, std::size_t& pos, std::string& tok) {
    if (pos >= line.size()) return false;
    std::size_t end = line.find(' ', pos);
    if (end == std::string::npos) end = line.size();
    if (end == pos) return false; // empty token = doubled space
    tok = line.substr(pos, end - pos);
    pos = (end == line.size()) ? end : end + 1;
    return true;
}

template <typename T>
bool parse_int(const std::string& tok, T& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

} // namespace

std::optional<TraceRecord> parse_trace_line(const std::string& line, std::string* err) {
    auto fail = [&](const std::string& m) -> std::optional<TraceRecord> {
        if (err) *err = m;
        return std::nullopt;
    };
    TraceRecord rec;
    std::size_t pos = 0;
    std::string tok;

    if (!next_token(line, pos, tok)) return fail("empty line");
    if (tok == "s") rec.op = TraceOp::Send;
    else if (tok == "r") rec.op = TraceOp::Recv;
    else if (tok == "d") rec.op = TraceOp::Drop;
    else if (tok == "tune") rec.op = TraceOp::Tune;
    else return fail("unknown op '" + tok + "'");

    if (!next_token(line, pos, tok) || !parse_int(tok, rec.time) || rec.time < 0)
        return fail("bad time field");
    if (!next_token(line, pos, tok) || !parse_int(tok, rec.node))
        return fail("bad node field");
    if (!next_token(line, pos, tok) || !parse_int(tok, rec.iface))
        return fail("bad iface field");
    if (!next_token(line, pos, tok) || !parse_int(tok, rec.channel))
        return fail("bad channel field");

    if (!next_token(line, pos, tok)) return fail("missing pkt_type");
    if (tok == "HELLO") rec.pkt_type = PacketType::Hello;
    else if (tok == "DATA") rec.pkt_type = PacketType::Data;
    else return fail("unknown pkt_type '" + tok + "'");

    if (!next_token(line, pos, tok) || !parse_int(tok, rec.src))
        return fail("bad src field");
    if (!next_token(line, pos, tok) || !parse_int(tok, rec.seq))
        return fail("bad seq field");

    if (next_token(line, pos, tok)) {
        if (tok == "COLLISION") rec.reason = DropReason::Collision;
        else if (tok == "BUSY") rec.reason = DropReason::Busy;
        else if (tok == "MISMATCH") rec.reason = DropReason::Mismatch;
        else return fail("unknown reason '" + tok + "'");
    }
    if (pos < line.size()) return fail("trailing garbage");
    if (rec.reason && rec.op != TraceOp::Drop) return fail("reason on non-drop line");
    return rec;
}

TraceWriter::TraceWriter(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!f->is_open()) {
        throw std::runtime_error("cannot open trace file for writing: " + path);
    }
    owned_ = std::move(f);
    sink_ = owned_.get();
}

TraceWriter::TraceWriter(std::ostream& sink) : sink_(&sink) {}
TraceWriter::TraceWriter() = default;
TraceWriter::~TraceWriter() = default;

void TraceWriter::emit(const TraceRecord& rec) {
    if (!sink_) return;
    *sink_ << rec.format() << '\n';
    if (!*sink_) throw std::runtime_error("trace write failed");
}

void TraceWriter::flush() {
    if (sink_) sink_->flush();
}

AuditReport audit_trace(std::istream& in) {
    AuditReport report;
    std::string line;
    std::size_t line_no = 0;
    SimTime last_time = 0;
    // (src, seq, channel, type) of every send seen so far
    std::set<std::tuple<NodeId, std::uint32_t, ChannelId, PacketType>> sent;
    // tuned channel per (node, iface), reconstructed from tune lines
    std::map<std::pair<NodeId, IfaceId>, ChannelId> tuned;

    while (std::getline(in, line)) {
        ++line_no;
        ++report.lines;
        std::string err;
        auto rec = parse_trace_line(line, &err);
        if (!rec) {
            report.violations.push_back({line_no, "malformed line: " + err});
            continue;
        }
        if (rec->time < last_time) {
            report.violations.push_back({line_no, "time goes backwards"});
        }
        last_time = std::max(last_time, rec->time);

        switch (rec->op) {
        case TraceOp::Send:
            sent.insert({rec->src, rec->seq, rec->channel, rec->pkt_type});
            break;
        case TraceOp::Tune:
            tuned[{rec->node, rec->iface}] = rec->channel;
            break;
        case TraceOp::Recv: {
            if (!sent.count({rec->src, rec->seq, rec->channel, rec->pkt_type})) {
                report.violations.push_back(
                    {line_no, "reception without a matching prior send"});
            }
            auto it = tuned.find({rec->node, rec->iface});
            if (it == tuned.end()) {
                report.violations.push_back(
                    {line_no, "reception on interface with no tuning history"});
            } else if (it->second != rec->channel) {
                report.violations.push_back(
                    {line_no, "reception channel " + std::to_string(rec->channel) +
                                  " does not match tuned channel " +
                                  std::to_string(it->second)});
            }
            break;
        }
        case TraceOp::Drop:
            break;
        }
    }
    return report;
}

AuditReport audit_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) {
        AuditReport r;
        r.violations.push_back({0, "cannot open trace file: " + path});
        return r;
    }
    return audit_trace(in);
}

std::vector<TraceRecord> parse_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string err;
        auto rec = parse_trace_line(line, &err);
        if (!rec) {
            throw std::runtime_error("trace line " + std::to_string(line_no) +
                                     ": " + err);
        }
        out.push_back(*rec);
    }
    return out;
}

std::vector<TraceRecord> parse_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot open trace file: " + path);
    return parse_trace(in);
}

} // namespace mcsim
