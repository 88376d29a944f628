// analysis.hpp - experiment sweeps over (n, m, s, k, seed) grids, CSV rows,
// and log-log scaling fits against the expected communication envelopes.

#ifndef SPANNER_ANALYSIS_HPP
#define SPANNER_ANALYSIS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spanner/simnet.hpp"

namespace spanner {

struct SweepRow {
    std::string protocol;
    int n = 0;
    int64_t m = 0;
    int s = 1;
    int k = 2;  // doubles as beta for the additive protocols
    uint64_t seed = 0;
    uint64_t bits_up = 0;
    uint64_t bits_down = 0;
    uint64_t total_bits = 0;
    uint64_t rounds = 0;
    uint64_t messages = 0;
    uint64_t spanner_edges = 0;
    int verified = -1;  // 1 pass, 0 fail, -1 unchecked (above the cap)
};

struct SweepGrid {
    std::vector<std::pair<int, int64_t>> sizes;  // (n, m) pairs
    std::vector<int> player_counts;
    std::vector<int> ks;
    std::vector<uint64_t> seeds;
    PartitionMode mode = PartitionMode::DisjointRandom;
};

// One run_protocol per grid point on G(n,m) instances; verification runs
// only when n <= verify_cap, above it rows carry verified = unchecked.
// Grid points execute on up to `jobs` workers; rows always come back in
// grid order. Failures propagate with the grid coordinates attached.
std::vector<SweepRow> sweep(ProtocolName protocol, const SweepGrid& grid,
                            const ProtocolParams& params, int verify_cap, int jobs = 1);

// The distortion a protocol's output is checked against.
int verification_stretch(ProtocolName protocol, int k, bool* multiplicative);

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    size_t points = 0;
};

// Least squares of log(total_bits) against log(variable), variable being
// "n" or "s". Needs at least 3 distinct values of the swept variable.
FitResult fit_exponent(const std::vector<SweepRow>& rows, const std::string& variable);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);

} // namespace spanner

#endif
