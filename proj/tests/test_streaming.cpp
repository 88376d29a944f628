#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "spanner/distances.hpp"
#include "spanner/generators.hpp"
#include "spanner/prng.hpp"
#include "spanner/streaming.hpp"

using namespace spanner;

TEST_CASE("make_churn_stream nets out to the source graph") {
    Prng rng(30, "test.churngen");
    for (int trial = 0; trial < 20; ++trial) {
        int n = 8 + static_cast<int>(rng.below(40));
        int64_t m = std::min<int64_t>(static_cast<int64_t>(rng.below(200)), edge_space(n));
        Graph g = random_gnm(n, m, rng.next_u64());
        TurnstileStream s = make_churn_stream(g, 0.3, rng.next_u64());
        CHECK(net_graph(s) == g);
        CHECK(s.updates.size() >= g.m());
    }
}

TEST_CASE("net_graph decodes positive net counts and rejects negatives") {
    TurnstileStream s;
    s.n = 4;
    s.updates = {{0, 1}, {1, 1}, {1, -1}, {5, 1}};
    Graph g = net_graph(s);
    CHECK(g.m() == 2);
    CHECK(g.has_edge(0, 1));   // index 0
    CHECK(g.has_edge(2, 3));   // index 5
    CHECK_FALSE(g.has_edge(0, 2));

    TurnstileStream bad;
    bad.n = 4;
    bad.updates = {{0, -1}};
    CHECK_THROWS_AS(net_graph(bad), std::domain_error);
}

TEST_CASE("stream file format round-trips and validates") {
    TurnstileStream s;
    s.n = 6;
    s.updates = {{3, 1}, {3, -1}, {7, 1}};
    std::stringstream buf;
    write_stream(buf, s);
    TurnstileStream back = read_stream(buf);
    CHECK(back.n == s.n);
    CHECK(back.updates == s.updates);

    std::stringstream big_delta("4 1\n0 2\n");
    CHECK_THROWS_AS(read_stream(big_delta), ParseError);
    std::stringstream oob("4 1\n9 1\n");
    CHECK_THROWS_AS(read_stream(oob), ParseError);
}

TEST_CASE("l0 sampler: cancellation, singleton support, zero-count safety") {
    SUBCASE("insert then delete leaves an empty sketch") {
        L0Sampler s(100, 42, 8, 8);
        s.update(17, 1);
        s.update(17, -1);
        CHECK(s.definitely_empty());
        CHECK(s.query() == std::nullopt);
    }
    SUBCASE("singleton support always recovers") {
        for (uint64_t key = 0; key < 200; ++key) {
            L0Sampler s(2016, key, 8, 12);
            s.update(5, 1);
            CHECK(s.query(key) == 5);
        }
    }
    SUBCASE("success never reports a cancelled index") {
        Prng rng(31, "test.cancel");
        for (int trial = 0; trial < 200; ++trial) {
            L0Sampler s(500, rng.next_u64(), 10, 10);
            std::map<int64_t, int64_t> reference;
            for (int step = 0; step < 40; ++step) {
                int64_t idx = static_cast<int64_t>(rng.below(500));
                s.update(idx, 1);
                ++reference[idx];
            }
            // cancel roughly half of the support
            int pruned = 0;
            for (auto& [idx, count] : reference) {
                if (pruned++ % 2) continue;
                for (int64_t i = 0; i < count; ++i) s.update(idx, -1);
                count = 0;
            }
            auto hit = s.query(rng.next_u64());
            if (hit) CHECK(reference[*hit] > 0);
        }
    }
}

TEST_CASE("l0 sampler: merge equals the concatenated stream exactly") {
    Prng rng(32, "test.merge");
    for (int trial = 0; trial < 300; ++trial) {
        uint64_t key = rng.next_u64();
        L0Sampler a(300, key, 6, 10);
        L0Sampler b(300, key, 6, 10);
        L0Sampler whole(300, key, 6, 10);
        for (int step = 0; step < 25; ++step) {
            int64_t idx = static_cast<int64_t>(rng.below(300));
            int32_t delta = rng.bernoulli(0.4) ? -1 : 1;
            if (rng.bernoulli(0.5))
                a.update(idx, delta);
            else
                b.update(idx, delta);
            whole.update(idx, delta);
        }
        a.merge(b);
        CHECK(a == whole);
        CHECK(a.query(trial) == whole.query(trial));
    }
    L0Sampler x(10, 1, 2, 2), y(10, 2, 2, 2);
    CHECK_THROWS_AS(x.merge(y), std::invalid_argument);
}

TEST_CASE("l0 sampler: final state is permutation-invariant") {
    Prng rng(36, "test.permute");
    for (int trial = 0; trial < 50; ++trial) {
        uint64_t key = rng.next_u64();
        std::vector<std::pair<int64_t, int32_t>> updates;
        for (int i = 0; i < 30; ++i)
            updates.emplace_back(static_cast<int64_t>(rng.below(400)),
                                 rng.bernoulli(0.4) ? -1 : 1);
        L0Sampler ordered(400, key, 6, 10);
        for (const auto& [idx, d] : updates) ordered.update(idx, d);
        for (size_t i = updates.size(); i > 1; --i) std::swap(updates[i - 1], updates[rng.below(i)]);
        L0Sampler shuffled(400, key, 6, 10);
        for (const auto& [idx, d] : updates) shuffled.update(idx, d);
        CHECK(ordered == shuffled);
    }
}

TEST_CASE("l0 sampler: measured success rate at supports 1, 4, 64") {
    // failure target n^-3 at n=64 allows no misses across 10,000 trials
    for (int support : {1, 4, 64}) {
        CAPTURE(support);
        int fails = 0;
        const int trials = 10000;
        Prng rng(33, "test.success");
        for (int t = 0; t < trials; ++t) {
            L0Sampler s = L0Sampler::for_domain(2016, rng.next_u64(), 2016, 64);
            for (int i = 0; i < support; ++i) s.update(i * 7 % 2016, 1);
            if (!s.query()) ++fails;
        }
        CHECK(fails == 0);
    }
}

TEST_CASE("l0 sampler: rough uniformity over a 16-element support") {
    // smoke version of the acceptance chi-square at lower trial count
    const int support = 16;
    std::vector<int> counts(support, 0);
    Prng rng(34, "test.uniform");
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        L0Sampler s = L0Sampler::for_domain(2016, rng.next_u64(), 2016, 64);
        for (int i = 0; i < support; ++i) s.update(100 + 3 * i, 1);
        auto hit = s.query();
        REQUIRE(hit.has_value());
        ++counts[static_cast<size_t>((*hit - 100) / 3)];
    }
    double expect = static_cast<double>(trials) / support;
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 37.697);  // df=15 critical value at p=0.001
}

TEST_CASE("stream_spanner: pass counter equals floor(k/2)+1") {
    Graph g = random_gnm(24, 60, 5);
    TurnstileStream s = make_churn_stream(g, 0.2, 5);
    for (int k = 2; k <= 8; ++k) {
        CAPTURE(k);
        StreamResult r = stream_spanner(s, k, 11);
        CHECK(r.passes == k / 2 + 1);
    }
    CHECK_THROWS_AS(stream_spanner(s, 1, 1), std::domain_error);
}

TEST_CASE("stream_spanner: insert-then-delete-everything yields an empty spanner") {
    Graph g = random_gnm(20, 50, 9);
    TurnstileStream s;
    s.n = g.n();
    for (const Edge& e : g.edges()) s.updates.emplace_back(edge_index(g.n(), e.u, e.v), 1);
    for (const Edge& e : g.edges()) s.updates.emplace_back(edge_index(g.n(), e.u, e.v), -1);
    StreamResult r = stream_spanner(s, 3, 7);
    CHECK(r.spanner.m() == 0);
}

TEST_CASE("stream_spanner: churned streams verify x(2k-1) on the net graph") {
    Prng rng(35, "test.streamverify");
    int verified = 0;
    const int runs = 20;
    for (int trial = 0; trial < runs; ++trial) {
        int n = 24 + static_cast<int>(rng.below(41));
        int64_t m = std::min<int64_t>(static_cast<int64_t>(rng.below(600)), edge_space(n));
        Graph g = random_gnm(n, m, rng.next_u64());
        TurnstileStream s = make_churn_stream(g, 0.2, rng.next_u64());
        int k = 2 + static_cast<int>(rng.below(3));
        StreamResult r = stream_spanner(s, k, rng.next_u64());
        CHECK(r.spanner.is_subgraph_of(g));
        if (verify_multiplicative(g, r.spanner, 2 * k - 1)) ++verified;
    }
    CHECK(verified >= runs - 1);
}

TEST_CASE("stream_spanner: determinism and space instrumentation") {
    Graph g = random_gnm(32, 140, 21);
    TurnstileStream s = make_churn_stream(g, 0.2, 21);
    StreamResult a = stream_spanner(s, 4, 77);
    StreamResult b = stream_spanner(s, 4, 77);
    CHECK(a.spanner == b.spanner);
    CHECK(a.words_used == b.words_used);
    CHECK(a.sampler_count == b.sampler_count);
    CHECK(a.words_used > 0);
    CHECK(a.words_formula >= a.words_used);  // laziness only trims the nominal plan
}

TEST_CASE("stream_spanner: measured words stay inside the n^(1+1/k) log^3 envelope") {
    for (int n : {48, 96}) {
        CAPTURE(n);
        int64_t m = std::min<int64_t>(static_cast<int64_t>(std::pow(n, 4.0 / 3.0)), edge_space(n));
        Graph g = random_gnm(n, m, 13);
        TurnstileStream s = make_churn_stream(g, 0.2, 13);
        StreamResult r = stream_spanner(s, 3, 13);
        double logn = std::log2(static_cast<double>(n));
        CHECK(static_cast<double>(r.words_used) <=
              4.0 * std::pow(n, 4.0 / 3.0) * logn * logn * logn);
    }
}
