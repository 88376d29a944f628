// simnet.hpp - coordinator-model runtime: players holding edge subsets, a
// coordinator, point-to-point channels with bit-exact metering, and a
// one-shot simultaneous mode.
//
// A run executes single-threaded with coordinator-driven turn order; the
// model's cost is communication, not time, and determinism gives byte-exact
// regression tests. Payload bits follow one fixed convention:
//   vertex            ceil(log2 n)
//   edge              2 ceil(log2 n)
//   integer in [0,B)  ceil(log2 B)
//   set of k items    length prefix ceil(log2(n+1)) + k element costs
// Per-message framing is counted in `messages`, not in bits.

#ifndef SPANNER_SIMNET_HPP
#define SPANNER_SIMNET_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanner/generators.hpp"
#include "spanner/graph.hpp"
#include "spanner/prng.hpp"

namespace spanner {

struct ProtocolViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct Transcript {
    std::vector<uint64_t> bits_to_coordinator;
    std::vector<uint64_t> bits_from_coordinator;
    uint64_t rounds = 0;
    uint64_t messages = 0;

    uint64_t bits_up() const;
    uint64_t bits_down() const;
    uint64_t total_bits() const { return bits_up() + bits_down(); }
};

enum class Mode { Interactive, Simultaneous };

// Payload costs for a vertex universe of size n.
class Wire {
public:
    explicit Wire(int n) : n_(n) {}
    uint64_t vertex_bits() const { return static_cast<uint64_t>(encoding_bits(n_)); }
    uint64_t edge_bits() const { return 2 * vertex_bits(); }
    uint64_t bit() const { return 1; }
    uint64_t integer_bits(int64_t bound) const {
        return static_cast<uint64_t>(encoding_bits(bound));
    }
    uint64_t set_prefix_bits() const {
        return static_cast<uint64_t>(encoding_bits(static_cast<int64_t>(n_) + 1));
    }
    uint64_t vertex_set_bits(size_t k) const { return set_prefix_bits() + k * vertex_bits(); }
    uint64_t edge_set_bits(size_t k) const { return set_prefix_bits() + k * edge_bits(); }

private:
    int n_;
};

// One protocol execution. Players can read only their own edge slice, and
// only while the context marks them as the acting party.
class SimContext {
public:
    SimContext(const Graph& g, const EdgePartition& partition, Mode mode, uint64_t seed,
               bool free_randomness = false);

    const Graph& graph() const { return *graph_; }
    int n() const { return graph_->n(); }
    int players() const { return partition_->player_count; }
    bool allow_duplication() const { return partition_->allow_duplication; }
    Mode mode() const { return mode_; }
    Wire wire() const { return Wire(std::max(2, n())); }
    uint64_t seed() const { return seed_; }

    // Capability-scoped input access.
    void begin_turn(int player);
    void end_turn();
    std::span<const Edge> local_edges(int player) const;

    // Channel operations; all charge the transcript.
    void send_to_coordinator(int player, uint64_t payload_bits);
    void send_from_coordinator(int player, uint64_t payload_bits);
    void broadcast_from_coordinator(uint64_t payload_bits);
    void relay_player_to_player(int from, int to, uint64_t payload_bits);
    void begin_round();

    // All random bits are drawn by the coordinator and (unless the run was
    // configured with free randomness) their distribution is charged as a
    // broadcast.
    Prng& coordinator_rng() { return rng_; }
    void charge_randomness_broadcast(uint64_t payload_bits);

    Transcript transcript;

private:
    void require_interactive(const char* what) const;

    const Graph* graph_;
    const EdgePartition* partition_;
    Mode mode_;
    uint64_t seed_;
    bool free_randomness_;
    int acting_ = -1;
    std::vector<bool> spoke_;  // simultaneous mode: one message per player
    Prng rng_;
};

// Instrumented randomness of a protocol run, kept so correctness-conditioned
// properties (sampling coverage implies stretch) can be checked post hoc.
struct SamplingTrace {
    double degree_threshold = -1.0;        // additive low-degree cutoff or Baswana-Sen d1
    std::vector<Vertex> bfs_roots;         // additive2 R / additive-k R1
    std::vector<Vertex> truncated_roots;   // additive-k R2
    std::vector<Vertex> cluster_centers;   // Baswana-Sen C0
    int expansion_iterations = 0;          // Baswana-Sen phase-2 loop count
    std::vector<int32_t> final_cluster;    // per-vertex center id, -1 unclustered
    std::vector<int32_t> final_depth;      // hops to the center inside the spanner
};

struct SpannerResult {
    Graph spanner;
    Transcript transcript;
    SamplingTrace trace;
};

enum class ProtocolName { Additive2, AdditiveK, GreedyMult, BaswanaSen, SimultaneousMult };

ProtocolName protocol_from_string(const std::string& name);
std::string to_string(ProtocolName p);

struct ProtocolParams {
    int k = 2;
    double c_sample = 2.0;   // multiplier on coverage sample counts
    double c_sample2 = 2.0;  // multiplier on additive-k's second R1 term
    double delta = -1.0;     // coverage failure target; <0 means 1/n
    bool free_randomness = false;
};

// Harness entry point. Validates that the partition covers g, builds the
// context (simultaneous mode only for SimultaneousMult) and dispatches.
// Deterministic given (protocol, g, partition, seed, params).
SpannerResult run_protocol(ProtocolName protocol, const Graph& g, const EdgePartition& partition,
                           uint64_t seed, const ProtocolParams& params = {});

} // namespace spanner

#endif
