// streaming.hpp - turnstile edge streams, the l0-sampler linear sketch, and
// the floor(k/2)+1-pass cluster-cluster spanner built on them.

#ifndef SPANNER_STREAMING_HPP
#define SPANNER_STREAMING_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// Signed updates over the C(n,2)-dimensional edge vector; the graph is the
// set of indices with positive net count. Negative net counts at stream end
// violate the model and are rejected by net_graph.
struct TurnstileStream {
    int n = 0;
    std::vector<std::pair<int64_t, int32_t>> updates;
};

Graph net_graph(const TurnstileStream& stream);

// Stream file format: header "n u_count", then lines "edge_index delta".
TurnstileStream read_stream(std::istream& in);
void write_stream(std::ostream& out, const TurnstileStream& stream);
TurnstileStream load_stream(const std::string& path);
void save_stream(const std::string& path, const TurnstileStream& stream,
                 const std::string& header_comment = "");

// Exact 1-sparse detector: (sum, index-weighted sum, fingerprint mod 2^61-1).
// Linear in the update stream.
struct OneSparseCell {
    int64_t weight = 0;
    int64_t weighted_index_sum = 0;
    uint64_t fingerprint = 0;

    void add(int64_t index, int64_t delta, uint64_t r);
    void merge(const OneSparseCell& other);
    bool empty() const { return weight == 0 && weighted_index_sum == 0 && fingerprint == 0; }
    // Index of the single supported entry, if the cell is exactly 1-sparse.
    std::optional<int64_t> recover(int64_t dimension, uint64_t r) const;
};

// Geometric-level linear sketch returning a uniform member of the support.
// Levels subsample nested halves of the index space; each (repetition,
// level) pair keeps one detector. Queries scan repetitions and report the
// first exactly-1-sparse level; symmetry of the hashing makes the reported
// index uniform conditioned on success.
class L0Sampler {
public:
    // `key` individualizes the hash functions; samplers merge only when
    // created with equal (dimension, key, repetitions, levels).
    L0Sampler(int64_t dimension, uint64_t key, int repetitions, int levels);

    // Sizing rule used across the project: enough levels to isolate within
    // `domain` candidates, repetitions driving failure below ~n^-3.
    static L0Sampler for_domain(int64_t dimension, uint64_t key, int64_t domain, int n);

    void update(int64_t index, int32_t delta);
    // nullopt = FAIL. Distinct query seeds rotate the repetition scan order.
    std::optional<int64_t> query(uint64_t query_seed = 0) const;
    bool definitely_empty() const;
    void merge(const L0Sampler& other);

    uint64_t words() const;  // sketch state, 3 words per detector
    int64_t dimension() const { return dimension_; }

    friend bool operator==(const L0Sampler&, const L0Sampler&);

private:
    uint64_t level_hash(int index_rep, int64_t index) const;
    uint64_t fingerprint_base(int rep) const;

    int64_t dimension_;
    uint64_t key_;
    int reps_;
    int levels_;
    std::vector<OneSparseCell> cells_;  // reps * levels
};

struct StreamResult {
    Graph spanner;
    int passes = 0;
    uint64_t sampler_count = 0;
    uint64_t words_used = 0;     // measured allocation across all passes
    uint64_t words_formula = 0;  // nominal worst-case allocation
};

// Multiplicative (2k-1)-spanner of the stream's net graph in floor(k/2)+1
// passes. Requires k >= 2.
StreamResult stream_spanner(const TurnstileStream& stream, int k, uint64_t seed);

// Shuffled insertions of g's edges interleaved with churn_fraction * m
// insert+delete pairs at random indices; the net graph is exactly g.
TurnstileStream make_churn_stream(const Graph& g, double churn_fraction, uint64_t seed);

} // namespace spanner

#endif
