#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spanner/analysis.hpp"
#include "spanner/generators.hpp"

using namespace spanner;

namespace {

SweepRow synthetic_row(int n, int s, uint64_t bits) {
    SweepRow r;
    r.protocol = "synthetic";
    r.n = n;
    r.s = s;
    r.total_bits = bits;
    return r;
}

} // namespace

TEST_CASE("fit_exponent recovers planted power laws to 1e-9") {
    SUBCASE("linear in s") {
        std::vector<SweepRow> rows;
        for (int s : {2, 4, 8, 16, 32})
            rows.push_back(synthetic_row(64, s, static_cast<uint64_t>(1000) * s));
        FitResult fit = fit_exponent(rows, "s");
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("square root in s") {
        // fourth powers keep c*sqrt(s) an exact integer
        std::vector<SweepRow> rows;
        for (int s : {4, 16, 64, 256})
            rows.push_back(synthetic_row(64, s, static_cast<uint64_t>(
                                                    std::llround(1000.0 * std::sqrt(s)))));
        FitResult fit = fit_exponent(rows, "s");
        CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("planted exponent in n") {
        for (double planted : {0.5, 1.0, 1.5, 2.0}) {
            std::vector<SweepRow> rows;
            for (int n : {64, 256, 1024, 4096}) {  // powers of 4: n^(j/2) exact
                uint64_t bits = static_cast<uint64_t>(std::llround(7.0 * std::pow(n, planted)));
                rows.push_back(synthetic_row(n, 4, bits));
            }
            FitResult fit = fit_exponent(rows, "n");
            CHECK(fit.slope == doctest::Approx(planted).epsilon(1e-9));
        }
    }
    SUBCASE("fewer than three distinct values is a domain error") {
        std::vector<SweepRow> rows{synthetic_row(64, 2, 10), synthetic_row(64, 4, 20),
                                   synthetic_row(64, 4, 21)};
        CHECK_THROWS_AS(fit_exponent(rows, "s"), std::domain_error);
        CHECK_THROWS_AS(fit_exponent(rows, "bogus"), std::domain_error);
    }
}

TEST_CASE("sweep: grid expansion, verification cap, and determinism") {
    SweepGrid grid;
    grid.sizes = {{24, 60}};
    grid.player_counts = {2};
    grid.ks = {2};
    grid.seeds = {1, 2, 3};

    std::vector<SweepRow> rows = sweep(ProtocolName::GreedyMult, grid, {}, 256);
    REQUIRE(rows.size() == 3);
    for (const SweepRow& r : rows) {
        CHECK(r.protocol == "greedy");
        CHECK(r.verified == 1);  // greedy stretch is deterministic
        CHECK(r.total_bits > 0);
        CHECK(r.spanner_edges > 0);
    }

    SUBCASE("a one-point grid equals a direct run") {
        SweepGrid one;
        one.sizes = {{24, 60}};
        one.player_counts = {2};
        one.ks = {2};
        one.seeds = {1};
        std::vector<SweepRow> single = sweep(ProtocolName::GreedyMult, one, {}, 256);
        REQUIRE(single.size() == 1);
        Graph g = random_gnm(24, 60, 1);
        EdgePartition p = partition_edges(g, 2, PartitionMode::DisjointRandom, 1);
        SpannerResult direct = run_protocol(ProtocolName::GreedyMult, g, p, 1);
        CHECK(single[0].total_bits == direct.transcript.total_bits());
        CHECK(single[0].spanner_edges == direct.spanner.m());
    }
    SUBCASE("rows above the verification cap are marked unchecked") {
        std::vector<SweepRow> capped = sweep(ProtocolName::GreedyMult, grid, {}, 8);
        for (const SweepRow& r : capped) CHECK(r.verified == -1);
    }
    SUBCASE("parallel jobs return identical rows in grid order") {
        SweepGrid wide;
        wide.sizes = {{16, 30}, {24, 60}};
        wide.player_counts = {1, 2};
        wide.ks = {2, 3};
        wide.seeds = {5, 6};
        std::vector<SweepRow> serial = sweep(ProtocolName::GreedyMult, wide, {}, 64, 1);
        std::vector<SweepRow> parallel = sweep(ProtocolName::GreedyMult, wide, {}, 64, 2);
        REQUIRE(serial.size() == parallel.size());
        for (size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].total_bits == parallel[i].total_bits);
            CHECK(serial[i].seed == parallel[i].seed);
            CHECK(serial[i].spanner_edges == parallel[i].spanner_edges);
        }
    }
    SUBCASE("empty grids are rejected") {
        SweepGrid empty;
        CHECK_THROWS_AS(sweep(ProtocolName::GreedyMult, empty, {}, 64), std::domain_error);
    }
    SUBCASE("failures carry grid coordinates") {
        SweepGrid bad;
        bad.sizes = {{4, 100}};  // m exceeds the edge space
        bad.player_counts = {2};
        bad.ks = {2};
        bad.seeds = {1};
        try {
            sweep(ProtocolName::GreedyMult, bad, {}, 64);
            CHECK(false);
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("n=4") != std::string::npos);
            CHECK(std::string(e.what()).find("m=100") != std::string::npos);
        }
    }
}

TEST_CASE("greedy spanner size grows no faster than n^(1+1/k) up the sweep") {
    for (int k : {2, 3}) {
        CAPTURE(k);
        SweepGrid grid;
        grid.sizes = {{128, 1448}, {512, 11585}, {2048, 92681}};  // m = floor(n^1.5)
        grid.player_counts = {4};
        grid.ks = {k};
        grid.seeds = {1};
        std::vector<SweepRow> rows = sweep(ProtocolName::GreedyMult, grid, {}, 64, 2);
        REQUIRE(rows.size() == 3);
        // log-log slope of spanner_edges against n
        double mx = 0, my = 0;
        for (const SweepRow& r : rows) {
            mx += std::log(static_cast<double>(r.n));
            my += std::log(static_cast<double>(r.spanner_edges));
        }
        mx /= 3;
        my /= 3;
        double sxx = 0, sxy = 0;
        for (const SweepRow& r : rows) {
            double dx = std::log(static_cast<double>(r.n)) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(static_cast<double>(r.spanner_edges)) - my);
        }
        CHECK(sxy / sxx <= 1.0 + 1.0 / k + 0.15);
    }
}

TEST_CASE("sweep CSV round-trips including the unchecked marker") {
    SweepGrid grid;
    grid.sizes = {{20, 40}};
    grid.player_counts = {2};
    grid.ks = {3};
    grid.seeds = {9, 10};
    std::vector<SweepRow> rows = sweep(ProtocolName::BaswanaSen, grid, {}, 8);
    std::stringstream buf;
    write_csv(buf, rows);
    std::vector<SweepRow> back = read_csv(buf);
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].protocol == rows[i].protocol);
        CHECK(back[i].total_bits == rows[i].total_bits);
        CHECK(back[i].verified == -1);
        CHECK(back[i].rounds == rows[i].rounds);
    }
}
