#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "spanner/distances.hpp"
#include "spanner/generators.hpp"
#include "spanner/prng.hpp"

using namespace spanner;

TEST_CASE("complete_bipartite shapes") {
    Graph single = complete_bipartite(1, 1);
    CHECK(single.n() == 2);
    CHECK(single.m() == 1);
    CHECK(girth(complete_bipartite(2, 2)) == 4);
    Graph k33 = complete_bipartite(3, 3);
    CHECK(k33.m() == 9);
    CHECK(girth(k33) == 4);
    CHECK_THROWS_AS(complete_bipartite(0, 2), std::domain_error);
}

TEST_CASE("random_gnm is exact-size, uniform-support and seed-stable") {
    Graph k4 = random_gnm(4, 6, 123);
    CHECK(k4.m() == 6);  // forced: the edge space is exactly 6
    CHECK(random_gnm(10, 0, 5).m() == 0);
    Graph a = random_gnm(16, 20, 7);
    Graph b = random_gnm(16, 20, 7);
    CHECK(a == b);
    Graph c = random_gnm(16, 20, 8);
    CHECK(a.m() == c.m());
    CHECK_THROWS_AS(random_gnm(4, 7, 1), std::domain_error);
}

TEST_CASE("projective incidence graphs: regularity, size, girth exactly 6") {
    for (int q : {2, 3, 5, 7}) {
        CAPTURE(q);
        Graph g = projective_incidence(q);
        const int N = q * q + q + 1;
        CHECK(g.n() == 2 * N);
        CHECK(g.m() == static_cast<size_t>(N) * (q + 1));
        for (Vertex v = 0; v < g.n(); ++v) CHECK(g.degree(v) == q + 1);
        CHECK(girth(g) == 6);
    }
    // the 14-vertex case is small enough for the deletion oracle
    CHECK(oracles::brute_girth(projective_incidence(2)) == 6);
    CHECK_THROWS_AS(projective_incidence(4), std::domain_error);
    CHECK_THROWS_AS(projective_incidence(1), std::domain_error);
}

TEST_CASE("biregular splits keep girth at least 6") {
    SUBCASE("g = 1 is the incidence graph itself") {
        CHECK(biregular_girth6(2, 1) == projective_incidence(2));
    }
    SUBCASE("degree-1 split destroys all cycles") {
        Graph g = biregular_girth6(2, 3);
        const int N = 7;
        CHECK(g.n() == N + 3 * N);
        for (Vertex v = N; v < g.n(); ++v) CHECK(g.degree(v) == 1);
        CHECK(girth(g) == std::nullopt);
    }
    SUBCASE("q=3 split in two has bidegrees (4,2) and girth >= 6") {
        Graph g = biregular_girth6(3, 2);
        const int N = 13;
        CHECK(g.n() == N + 2 * N);
        for (Vertex v = 0; v < N; ++v) CHECK(g.degree(v) == 4);
        for (Vertex v = N; v < g.n(); ++v) CHECK(g.degree(v) == 2);
        auto gi = girth(g);
        REQUIRE(gi.has_value());
        CHECK(*gi >= 6);
    }
    SUBCASE("every divisor split of q=5 keeps girth >= 6") {
        for (int split : {1, 2, 3, 6}) {
            CAPTURE(split);
            Graph g = biregular_girth6(5, split);
            auto gi = girth(g);
            if (gi) CHECK(*gi >= 6);
            const int N = 31;
            for (Vertex v = 0; v < N; ++v) CHECK(g.degree(v) == 6);
            for (Vertex v = N; v < g.n(); ++v) CHECK(g.degree(v) == 6 / split);
        }
    }
    CHECK_THROWS_AS(biregular_girth6(3, 3), std::domain_error);
}

TEST_CASE("hard instance: replicated point side, disjoint partition") {
    SUBCASE("s = 1 is isomorphic to the base incidence graph") {
        HardInstance inst = hard_instance_mult3(2, 1);
        CHECK(inst.graph == projective_incidence(2));
    }
    SUBCASE("s = 2 doubles the edges and partitions them disjointly") {
        HardInstance inst = hard_instance_mult3(2, 2);
        CHECK(inst.graph.n() == 3 * 7);
        CHECK(inst.graph.m() == 42);
        CHECK(inst.partition.player_count == 2);
        CHECK_FALSE(inst.partition.allow_duplication);
        CHECK(inst.partition.pairwise_disjoint());
        CHECK(inst.partition.covers(inst.graph));
        // each player's edges touch only its own point copy
        for (int player = 0; player < 2; ++player)
            for (const Edge& e : inst.partition.assignment[static_cast<size_t>(player)])
                CHECK(e.u / 7 == player);
    }
    SUBCASE("larger instances stay duplicate-free") {
        HardInstance inst = hard_instance_mult3(3, 4);
        CHECK(inst.partition.pairwise_disjoint());
        CHECK(inst.partition.covers(inst.graph));
        CHECK(inst.graph.m() == 4 * inst.base_edges);
    }
}

TEST_CASE("partition_edges modes") {
    Graph g = random_gnm(20, 60, 42);

    SUBCASE("one player holds everything") {
        for (auto mode : {PartitionMode::DisjointRandom, PartitionMode::DuplicatedRandom,
                          PartitionMode::AdversarialByVertex}) {
            EdgePartition p = partition_edges(g, 1, mode, 3);
            CHECK(p.assignment[0].size() == g.m());
            CHECK(p.covers(g));
        }
    }
    SUBCASE("disjoint-random partitions exactly") {
        EdgePartition p = partition_edges(g, 4, PartitionMode::DisjointRandom, 9);
        CHECK(p.total_assigned() == g.m());
        CHECK(p.pairwise_disjoint());
        CHECK(p.covers(g));
    }
    SUBCASE("duplicated-random is reproducible and covering") {
        EdgePartition a = partition_edges(g, 2, PartitionMode::DuplicatedRandom, 3);
        EdgePartition b = partition_edges(g, 2, PartitionMode::DuplicatedRandom, 3);
        CHECK(a.assignment == b.assignment);
        CHECK(a.covers(g));
        CHECK(a.total_assigned() >= g.m());

        Graph k4 = random_gnm(4, 6, 1);  // forced K_4
        EdgePartition p4 = partition_edges(k4, 2, PartitionMode::DuplicatedRandom, 3);
        CHECK(p4.assignment == partition_edges(k4, 2, PartitionMode::DuplicatedRandom, 3).assignment);
        CHECK(p4.covers(k4));  // union is all 6 edges
    }
    SUBCASE("adversarial-by-vertex routes all star edges together") {
        Graph star(5);
        for (Vertex v = 1; v < 5; ++v) star.add_edge(0, v);
        EdgePartition p = partition_edges(star, 3, PartitionMode::AdversarialByVertex, 17);
        size_t nonempty = 0;
        for (const auto& edges : p.assignment)
            if (!edges.empty()) ++nonempty;
        CHECK(nonempty == 1);  // all edges share lower endpoint 0
    }
}

TEST_CASE("partition file format round-trips") {
    Graph g = random_gnm(12, 25, 5);
    EdgePartition p = partition_edges(g, 3, PartitionMode::DuplicatedRandom, 8);
    std::stringstream buf;
    write_partition(buf, p, g.n());
    EdgePartition back = read_partition(buf);
    CHECK(back.player_count == p.player_count);
    CHECK(back.allow_duplication == p.allow_duplication);
    CHECK(back.assignment == p.assignment);

    std::stringstream overlap("2 4 0\n0 0 1\n1 0 1\n");
    CHECK_THROWS_AS(read_partition(overlap), ParseError);
}
