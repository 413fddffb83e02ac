#include <doctest.h>

#include <random>
#include <vector>

#include "mcsim/engine.hpp"

using namespace mcsim;

TEST_CASE("first scheduled event is pending and fires") {
    EventQueue q;
    int fired = 0;
    auto h = q.schedule(0, [&] { ++fired; });
    CHECK(h.valid());
    CHECK(q.pending() == 1);
    q.run_until(10);
    CHECK(fired == 1);
    CHECK(q.pending() == 0);
    CHECK_FALSE(h.valid());
}

TEST_CASE("equal timestamps execute in insertion order") {
    EventQueue q;
    std::vector<char> order;
    q.schedule(5, [&] { order.push_back('A'); });
    q.schedule(5, [&] { order.push_back('B'); });
    q.run_until(5);
    CHECK(order == std::vector<char>{'A', 'B'});
}

TEST_CASE("cancelled events never execute") {
    EventQueue q;
    bool fired = false;
    auto h = q.schedule(3, [&] { fired = true; });
    q.cancel(h);
    CHECK(q.pending() == 0);
    q.run_until(10);
    CHECK_FALSE(fired);
}

TEST_CASE("scheduling in the past is a hard error") {
    EventQueue q;
    q.schedule(5, [] {});
    q.run_until(5);
    CHECK_THROWS_AS(q.schedule(4, [] {}), std::logic_error);
}

TEST_CASE("empty run executes nothing and advances the clock") {
    EventQueue q;
    CHECK(q.run_until(10'000'000) == 0);
    CHECK(q.now() == 10'000'000);
}

TEST_CASE("events past t_end stay queued") {
    EventQueue q;
    bool fired = false;
    q.schedule(100, [&] { fired = true; });
    q.run_until(99);
    CHECK_FALSE(fired);
    q.run_until(100);
    CHECK(fired);
}

TEST_CASE("executed timestamps are non-decreasing, ties FIFO") {
    EventQueue q;
    std::mt19937 gen(42);
    std::vector<std::pair<SimTime, int>> executed;
    int id = 0;
    for (int i = 0; i < 500; ++i) {
        SimTime at = gen() % 50;
        int my_id = id++;
        q.schedule(at, [&, at, my_id] {
            executed.push_back({at, my_id});
            // events may schedule further events
            if (my_id % 7 == 0) {
                SimTime later = q.now() + gen() % 10;
                int nested = id++;
                q.schedule(later, [&, later, nested] {
                    executed.push_back({later, nested});
                });
            }
        });
    }
    q.run_until(100);
    REQUIRE(executed.size() >= 500);
    for (std::size_t i = 1; i < executed.size(); ++i) {
        CHECK(executed[i].first >= executed[i - 1].first);
    }
}

TEST_CASE("cancel after firing is a harmless no-op") {
    EventQueue q;
    int fired = 0;
    auto h = q.schedule(1, [&] { ++fired; });
    q.run_until(2);
    q.cancel(h);
    CHECK(fired == 1);
}
