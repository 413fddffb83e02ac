#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <vector>

#include "mcsim/types.hpp"

namespace mcsim {

/// Deterministic discrete-event scheduler. Events at equal timestamps
/// execute in insertion order, so a run is a total order over events.
class EventQueue {
public:
    using Callback = std::function<void()>;

private:
    struct EventState {
        Callback cb;
        bool cancelled = false;
    };

public:
    class Handle {
        friend class EventQueue;

    public:
        Handle() = default;
        bool valid() const { return !state_.expired(); }

    private:
        std::weak_ptr<EventState> state_;
    };

    SimTime now() const { return now_; }

    /// Scheduling in the past is a programming bug, not a model outcome.
    Handle schedule(SimTime at, Callback cb);
    Handle schedule_in(SimTime delay, Callback cb) {
        return schedule(now_ + delay, std::move(cb));
    }

    /// Cancelled events never execute. Cancelling a fired or already
    /// cancelled handle is a no-op.
    void cancel(Handle& h);

    /// Executes every pending, uncancelled event with fire_at <= t_end and
    /// leaves the clock at t_end. Returns the number of executed events.
    std::size_t run_until(SimTime t_end);

    /// Pending, uncancelled events.
    std::size_t pending() const { return live_; }

private:
    struct Entry {
        SimTime at;
        std::uint64_t seq;
        std::shared_ptr<EventState> state;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::size_t live_ = 0;
};

} // namespace mcsim
