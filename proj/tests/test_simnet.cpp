#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spanner/generators.hpp"
#include "spanner/simnet.hpp"

using namespace spanner;

namespace {

Graph k22() { return complete_bipartite(2, 2); }

SimContext make_ctx(const Graph& g, const EdgePartition& p, Mode mode, uint64_t seed = 1) {
    return SimContext(g, p, mode, seed);
}

} // namespace

TEST_CASE("payload cost convention") {
    Wire w16(16);
    CHECK(w16.vertex_bits() == 4);
    CHECK(w16.edge_bits() == 8);
    CHECK(w16.set_prefix_bits() == 5);  // length in [0,16]
    CHECK(w16.vertex_set_bits(3) == 5 + 12);
    CHECK(w16.vertex_set_bits(0) == 5);

    Wire w1024(1024);
    CHECK(w1024.edge_bits() == 20);
    Wire w1025(1025);
    CHECK(w1025.vertex_bits() == 11);
    CHECK(Wire(2).bit() == 1);
}

TEST_CASE("send and broadcast charge the transcript per the convention") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 4, PartitionMode::DisjointRandom, 1);

    SUBCASE("edge payload at n=1024 universe costs 20 up") {
        SimContext ctx(g, p, Mode::Interactive, 1);
        Wire w(1024);
        ctx.send_to_coordinator(2, w.edge_bits());
        CHECK(ctx.transcript.bits_to_coordinator[2] == 20);
        CHECK(ctx.transcript.bits_up() == 20);
        CHECK(ctx.transcript.messages == 1);
    }
    SUBCASE("vertex payload at n=1025 costs 11") {
        SimContext ctx(g, p, Mode::Interactive, 1);
        ctx.send_to_coordinator(0, Wire(1025).vertex_bits());
        CHECK(ctx.transcript.bits_up() == 11);
    }
    SUBCASE("bit payload costs 1") {
        SimContext ctx(g, p, Mode::Interactive, 1);
        ctx.send_to_coordinator(0, Wire(2).bit());
        CHECK(ctx.transcript.bits_up() == 1);
    }
    SUBCASE("broadcast of a 3-vertex set at n=16, s=4 charges every player") {
        SimContext ctx(g, p, Mode::Interactive, 1);
        Wire w(16);
        ctx.broadcast_from_coordinator(w.vertex_set_bits(3));
        for (int i = 0; i < 4; ++i) CHECK(ctx.transcript.bits_from_coordinator[i] == 17);
        CHECK(ctx.transcript.bits_down() == 68);
        CHECK(ctx.transcript.messages == 4);
    }
    SUBCASE("empty broadcast still pays the length prefix") {
        SimContext ctx(g, p, Mode::Interactive, 1);
        Wire w(16);
        ctx.broadcast_from_coordinator(w.vertex_set_bits(0));
        CHECK(ctx.transcript.bits_down() == 4 * w.set_prefix_bits());
    }
    SUBCASE("single-bit broadcast to 8 players costs 8") {
        EdgePartition p8 = partition_edges(g, 8, PartitionMode::DisjointRandom, 1);
        SimContext ctx(g, p8, Mode::Interactive, 1);
        ctx.broadcast_from_coordinator(Wire(16).bit());
        CHECK(ctx.transcript.bits_down() == 8);
    }
}

TEST_CASE("relay charges both legs plus addressing") {
    Graph g = k22();

    SUBCASE("5-edge payload at n=256, s=4") {
        EdgePartition p = partition_edges(g, 4, PartitionMode::DisjointRandom, 1);
        SimContext ctx(g, p, Mode::Interactive, 1);
        Wire w(256);
        uint64_t payload = w.edge_set_bits(5);
        CHECK(payload == 9 + 5 * 16);  // prefix over [0,256] + elements
        ctx.relay_player_to_player(0, 3, payload);
        CHECK(ctx.transcript.bits_up() == payload);
        CHECK(ctx.transcript.bits_down() == payload + 2);  // log2(4) address bits
        CHECK(ctx.transcript.messages == 2);
    }
    SUBCASE("empty payload still pays prefix twice plus addressing") {
        EdgePartition p = partition_edges(g, 4, PartitionMode::DisjointRandom, 1);
        SimContext ctx(g, p, Mode::Interactive, 1);
        Wire w(256);
        ctx.relay_player_to_player(1, 2, w.edge_set_bits(0));
        CHECK(ctx.transcript.total_bits() == 2 * w.set_prefix_bits() + 2);
    }
    SUBCASE("two players need one addressing bit") {
        EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
        SimContext ctx(g, p, Mode::Interactive, 1);
        ctx.relay_player_to_player(0, 1, 0);
        CHECK(ctx.transcript.bits_down() == 1);
    }
    SUBCASE("self-relay is a domain error") {
        EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
        SimContext ctx(g, p, Mode::Interactive, 1);
        CHECK_THROWS_AS(ctx.relay_player_to_player(1, 1, 5), std::domain_error);
    }
}

TEST_CASE("simultaneous mode restrictions") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
    SimContext ctx = make_ctx(g, p, Mode::Simultaneous);
    ctx.send_to_coordinator(0, 5);
    CHECK_THROWS_AS(ctx.send_to_coordinator(0, 5), ProtocolViolation);
    CHECK_THROWS_AS(ctx.broadcast_from_coordinator(1), ProtocolViolation);
    CHECK_THROWS_AS(ctx.relay_player_to_player(0, 1, 1), ProtocolViolation);
    CHECK_THROWS_AS(ctx.send_from_coordinator(0, 1), ProtocolViolation);
    ctx.send_to_coordinator(1, 5);  // other players still get their one message
    CHECK(ctx.transcript.bits_up() == 10);
    CHECK(ctx.transcript.bits_down() == 0);
}

TEST_CASE("players cannot read foreign edges (canary)") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 7);
    SimContext ctx = make_ctx(g, p, Mode::Interactive);

    CHECK_THROWS_AS(ctx.local_edges(0), ProtocolViolation);  // no turn granted
    ctx.begin_turn(0);
    CHECK_THROWS_AS(ctx.local_edges(1), ProtocolViolation);  // foreign access
    auto own = ctx.local_edges(0);
    CHECK(own.size() == p.assignment[0].size());
    CHECK_THROWS_AS(ctx.begin_turn(1), ProtocolViolation);  // nested turn
    ctx.end_turn();
    ctx.begin_turn(1);
    CHECK(ctx.local_edges(1).size() == p.assignment[1].size());
    ctx.end_turn();
}

TEST_CASE("run_protocol validates the partition against the graph") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
    p.assignment[0].pop_back();  // partition no longer covers g
    CHECK_THROWS_AS(run_protocol(ProtocolName::GreedyMult, g, p, 1), std::invalid_argument);

    EdgePartition q = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
    q.allow_duplication = false;
    q.assignment[0].push_back(q.assignment[1].front());  // overlap without the flag
    CHECK_THROWS_AS(run_protocol(ProtocolName::GreedyMult, g, q, 1), std::invalid_argument);
}

TEST_CASE("run_protocol on the empty graph returns an empty spanner") {
    for (int n : {0, 6}) {
        CAPTURE(n);
        Graph g(n);
        EdgePartition p = partition_edges(g, 3, PartitionMode::DisjointRandom, 1);
        for (auto proto : {ProtocolName::Additive2, ProtocolName::GreedyMult,
                           ProtocolName::BaswanaSen, ProtocolName::SimultaneousMult}) {
            ProtocolParams params;
            params.k = 3;
            SpannerResult r = run_protocol(proto, g, p, 5, params);
            CHECK(r.spanner.m() == 0);
            CHECK(r.spanner.n() == n);
        }
    }
}

TEST_CASE("greedy on K22 with one player keeps three edges and spends bits") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 1, PartitionMode::DisjointRandom, 1);
    ProtocolParams params;
    params.k = 2;
    SpannerResult r = run_protocol(ProtocolName::GreedyMult, g, p, 1, params);
    CHECK(r.spanner.m() == 3);  // the fourth edge closes a 4-cycle
    CHECK(r.spanner.is_subgraph_of(g));
    CHECK(r.transcript.total_bits() > 0);
}

TEST_CASE("identical runs produce identical spanners and transcripts") {
    Graph g = random_gnm(24, 60, 99);
    EdgePartition p = partition_edges(g, 3, PartitionMode::DisjointRandom, 99);
    for (auto proto : {ProtocolName::Additive2, ProtocolName::AdditiveK, ProtocolName::GreedyMult,
                       ProtocolName::BaswanaSen, ProtocolName::SimultaneousMult}) {
        CAPTURE(to_string(proto));
        ProtocolParams params;
        params.k = proto == ProtocolName::BaswanaSen ? 3 : 2;
        if (proto == ProtocolName::AdditiveK) params.k = 8;
        SpannerResult a = run_protocol(proto, g, p, 123, params);
        SpannerResult b = run_protocol(proto, g, p, 123, params);
        CHECK(a.spanner == b.spanner);
        CHECK(a.transcript.bits_to_coordinator == b.transcript.bits_to_coordinator);
        CHECK(a.transcript.bits_from_coordinator == b.transcript.bits_from_coordinator);
        CHECK(a.transcript.rounds == b.transcript.rounds);
        CHECK(a.transcript.messages == b.transcript.messages);
        CHECK(a.spanner.is_subgraph_of(g));
    }
}

TEST_CASE("transcript counters are monotone during a run") {
    Graph g = k22();
    EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
    SimContext ctx = make_ctx(g, p, Mode::Interactive);
    uint64_t last = 0;
    for (int step = 0; step < 5; ++step) {
        ctx.send_to_coordinator(step % 2, 3);
        ctx.broadcast_from_coordinator(2);
        CHECK(ctx.transcript.total_bits() > last);
        last = ctx.transcript.total_bits();
    }
    CHECK(last == 5 * 3 + 5 * 2 * 2);
}

TEST_CASE("free randomness suppresses the sampling broadcast charge") {
    Graph g = random_gnm(32, 80, 4);
    EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 4);
    ProtocolParams charged;
    ProtocolParams free;
    free.free_randomness = true;
    SpannerResult a = run_protocol(ProtocolName::Additive2, g, p, 11, charged);
    SpannerResult b = run_protocol(ProtocolName::Additive2, g, p, 11, free);
    CHECK(a.spanner == b.spanner);  // same randomness, only the accounting differs
    CHECK(a.transcript.bits_down() > b.transcript.bits_down());
    CHECK(a.transcript.bits_up() == b.transcript.bits_up());
}
