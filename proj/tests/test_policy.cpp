#include <doctest.h>

#include "mcsim/policy.hpp"

using namespace mcsim;

TEST_CASE("static map: mapped node gets its channel, others the fallback") {
    ChannelPolicy p;
    p.kind = PolicyKind::StaticMap;
    p.node_map = {{7, 0}};
    p.fallback = 1;
    CHECK(p.select_tx_channel(7, 5) == 0);
    CHECK(p.select_tx_channel(3, 5) == 1);
    CHECK(p.static_assignment(7) == 0);
    CHECK(p.static_assignment(3) == 1);
}

TEST_CASE("explicit stamp forces one channel for every node and interface") {
    ChannelPolicy p;
    p.kind = PolicyKind::ExplicitStamp;
    p.explicit_channel = 1;
    for (NodeId n = 0; n < 5; ++n) {
        for (ChannelId tuned = 0; tuned < 4; ++tuned) {
            CHECK(p.select_tx_channel(n, tuned) == 1);
            CHECK(p.stamp_channel(n, p.select_tx_channel(n, tuned)) == 1);
        }
    }
    CHECK_FALSE(p.static_assignment(0).has_value());
}

TEST_CASE("default uses the interface's current tuning") {
    ChannelPolicy p;
    CHECK(p.select_tx_channel(0, 5) == 5);
    CHECK(p.stamp_channel(0, 5) == 5);
    CHECK_FALSE(p.rx_retune(Packet{}).has_value());
}

TEST_CASE("header driven: transmit side unchanged, stamp table applies") {
    ChannelPolicy p;
    p.kind = PolicyKind::HeaderDriven;
    p.stamps = {{0, 2}};
    CHECK(p.select_tx_channel(0, 1) == 1);
    CHECK(p.stamp_channel(0, 1) == 2);   // node 0 stamps the routing decision
    CHECK(p.stamp_channel(1, 1) == 1);   // others stamp the channel they use
}

TEST_CASE("header driven: receivers adopt the header channel from hellos") {
    ChannelPolicy p;
    p.kind = PolicyKind::HeaderDriven;
    Packet hello;
    hello.type = PacketType::Hello;
    hello.channel_index = 2;
    CHECK(p.rx_retune(hello) == 2);

    Packet data = hello;
    data.type = PacketType::Data;
    CHECK_FALSE(p.rx_retune(data).has_value());
}

TEST_CASE("only header driven retunes on reception") {
    Packet hello;
    hello.type = PacketType::Hello;
    hello.channel_index = 3;
    for (PolicyKind kind :
         {PolicyKind::Default, PolicyKind::ExplicitStamp, PolicyKind::StaticMap}) {
        ChannelPolicy p;
        p.kind = kind;
        CHECK_FALSE(p.rx_retune(hello).has_value());
    }
}
