#include "mcsim/engine.hpp"

#include <stdexcept>
#include <string>

namespace mcsim {

EventQueue::Handle EventQueue::schedule(SimTime at, Callback cb) {
    if (at < now_) {
        throw std::logic_error("event scheduled in the past: fire_at=" +
                               std::to_string(at) + " now=" + std::to_string(now_));
    }
    auto state = std::make_shared<EventState>();
    state->cb = std::move(cb);
    queue_.push(Entry{at, next_seq_++, state});
    ++live_;
    Handle h;
    h.state_ = state;
    return h;
}

void EventQueue::cancel(Handle& h) {
    if (auto st = h.state_.lock()) {
        if (!st->cancelled) {
            st->cancelled = true;
            st->cb = nullptr;
            --live_;
        }
    }
    h.state_.reset();
}

std::size_t EventQueue::run_until(SimTime t_end) {
    std::size_t executed = 0;
    while (!queue_.empty() && queue_.top().at <= t_end) {
        Entry e = queue_.top();
        queue_.pop();
        if (e.state->cancelled) continue;
        now_ = e.at;
        Callback cb = std::move(e.state->cb);
        e.state->cancelled = true; // fired; handles to it are now dead
        --live_;
        cb();
        ++executed;
    }
    now_ = t_end;
    return executed;
}

} // namespace mcsim
