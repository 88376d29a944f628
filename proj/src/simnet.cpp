#include "spanner/simnet.hpp"

#include <numeric>

#include "spanner/protocols.hpp"

namespace spanner {

uint64_t Transcript::bits_up() const {
    return std::accumulate(bits_to_coordinator.begin(), bits_to_coordinator.end(), uint64_t{0});
}

uint64_t Transcript::bits_down() const {
    return std::accumulate(bits_from_coordinator.begin(), bits_from_coordinator.end(), uint64_t{0});
}

SimContext::SimContext(const Graph& g, const EdgePartition& partition, Mode mode, uint64_t seed,
                       bool free_randomness)
    : graph_(&g),
      partition_(&partition),
      mode_(mode),
      seed_(seed),
      free_randomness_(free_randomness),
      spoke_(static_cast<size_t>(partition.player_count), false),
      rng_(seed, "simnet.coordinator") {
    if (partition.player_count < 1) throw std::invalid_argument("partition needs >= 1 player");
    transcript.bits_to_coordinator.assign(static_cast<size_t>(partition.player_count), 0);
    transcript.bits_from_coordinator.assign(static_cast<size_t>(partition.player_count), 0);
}

void SimContext::begin_turn(int player) {
    if (player < 0 || player >= players()) throw std::invalid_argument("player out of range");
    if (acting_ != -1) throw ProtocolViolation("nested player turns");
    acting_ = player;
}

void SimContext::end_turn() { acting_ = -1; }

std::span<const Edge> SimContext::local_edges(int player) const {
    if (player < 0 || player >= players()) throw std::invalid_argument("player out of range");
    if (acting_ != player)
        throw ProtocolViolation("player " + std::to_string(acting_) +
                                " attempted to read edges of player " + std::to_string(player));
    const auto& edges = partition_->assignment[static_cast<size_t>(player)];
    return {edges.data(), edges.size()};
}

void SimContext::send_to_coordinator(int player, uint64_t payload_bits) {
    if (player < 0 || player >= players()) throw std::invalid_argument("player out of range");
    if (mode_ == Mode::Simultaneous) {
        if (spoke_[static_cast<size_t>(player)])
            throw ProtocolViolation("simultaneous mode allows one message per player");
        spoke_[static_cast<size_t>(player)] = true;
    }
    transcript.bits_to_coordinator[static_cast<size_t>(player)] += payload_bits;
    transcript.messages += 1;
}

void SimContext::send_from_coordinator(int player, uint64_t payload_bits) {
    require_interactive("coordinator reply");
    if (player < 0 || player >= players()) throw std::invalid_argument("player out of range");
    transcript.bits_from_coordinator[static_cast<size_t>(player)] += payload_bits;
    transcript.messages += 1;
}

void SimContext::broadcast_from_coordinator(uint64_t payload_bits) {
    require_interactive("broadcast");
    for (int i = 0; i < players(); ++i)
        transcript.bits_from_coordinator[static_cast<size_t>(i)] += payload_bits;
    transcript.messages += static_cast<uint64_t>(players());
}

void SimContext::relay_player_to_player(int from, int to, uint64_t payload_bits) {
    require_interactive("relay");
    if (from == to) throw std::domain_error("relay requires distinct players");
    // Both legs pay the payload; the forwarding leg carries the destination
    // address on top.
    uint64_t addressing =
        players() > 1 ? static_cast<uint64_t>(encoding_bits(players())) : 1;
    send_to_coordinator(from, payload_bits);
    transcript.bits_from_coordinator[static_cast<size_t>(to)] += payload_bits + addressing;
    transcript.messages += 1;
}

void SimContext::begin_round() { transcript.rounds += 1; }

void SimContext::charge_randomness_broadcast(uint64_t payload_bits) {
    if (free_randomness_) return;
    broadcast_from_coordinator(payload_bits);
}

void SimContext::require_interactive(const char* what) const {
    if (mode_ != Mode::Interactive)
        throw ProtocolViolation(std::string(what) + " is not allowed in simultaneous mode");
}

ProtocolName protocol_from_string(const std::string& name) {
    if (name == "additive2") return ProtocolName::Additive2;
    if (name == "additive-k") return ProtocolName::AdditiveK;
    if (name == "greedy") return ProtocolName::GreedyMult;
    if (name == "baswana-sen") return ProtocolName::BaswanaSen;
    if (name == "simultaneous") return ProtocolName::SimultaneousMult;
    throw std::domain_error("unknown protocol: " + name);
}

std::string to_string(ProtocolName p) {
    switch (p) {
        case ProtocolName::Additive2: return "additive2";
        case ProtocolName::AdditiveK: return "additive-k";
        case ProtocolName::GreedyMult: return "greedy";
        case ProtocolName::BaswanaSen: return "baswana-sen";
        case ProtocolName::SimultaneousMult: return "simultaneous";
    }
    throw std::logic_error("bad protocol name");
}

SpannerResult run_protocol(ProtocolName protocol, const Graph& g, const EdgePartition& partition,
                           uint64_t seed, const ProtocolParams& params) {
    if (!partition.covers(g)) throw std::invalid_argument("partition does not cover the graph");
    if (!partition.allow_duplication && !partition.pairwise_disjoint())
        throw std::invalid_argument("without-duplication partition has overlapping edge sets");
    Mode mode = protocol == ProtocolName::SimultaneousMult ? Mode::Simultaneous : Mode::Interactive;
    SimContext ctx(g, partition, mode, seed, params.free_randomness);
    switch (protocol) {
        case ProtocolName::Additive2: return protocols::additive2(ctx, params);
        case ProtocolName::AdditiveK: return protocols::additive_k(ctx, params.k, params);
        case ProtocolName::GreedyMult: return protocols::greedy_mult(ctx, params.k);
        case ProtocolName::BaswanaSen: return protocols::baswana_sen(ctx, params.k, params);
        case ProtocolName::SimultaneousMult: return protocols::simultaneous_mult(ctx, params.k);
    }
    throw std::logic_error("bad protocol name");
}

} // namespace spanner
