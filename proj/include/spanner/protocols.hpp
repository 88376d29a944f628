// protocols.hpp - the distributed spanner protocols, written over simnet
// primitives. Every protocol is deterministic given the context seed.

#ifndef SPANNER_PROTOCOLS_HPP
#define SPANNER_PROTOCOLS_HPP

#include <cstdint>
#include <vector>

#include "spanner/distances.hpp"
#include "spanner/simnet.hpp"

namespace spanner::protocols {

// ceil(c * f * ln(n/delta)) with delta < 0 meaning 1/n; at least 1.
int64_t coverage_sample_count(double c, double f, int n, double delta);

// All parties learn a degree vector for the union graph. Without duplication
// the values are exact; with duplication they over-count, which only promotes
// vertices from the ship-everything class to the BFS-covered class.
std::vector<int> degree_exchange(SimContext& ctx);

// Coordinator-driven BFS: broadcast the active set, players answer with
// never-active neighbors plus a witness edge, lowest player id then lowest
// vertex id wins ties.
BfsTree dist_bfs(SimContext& ctx, Vertex root);

// Same protocol, stopped once the tree holds `budget` vertices; the last
// level is filled in ascending vertex-id order.
BfsTree dist_bfs_truncated(SimContext& ctx, Vertex root, size_t budget);

SpannerResult additive2(SimContext& ctx, const ProtocolParams& params = {});

// Delegates to additive2 for k < 6.
SpannerResult additive_k(SimContext& ctx, int k, const ProtocolParams& params = {});

// Token-passing greedy: players in id order keep an edge iff it closes no
// cycle of length <= 2k in the partial spanner, then forward the spanner.
// Output girth exceeds 2k, so it is always a (2k-1)-spanner.
SpannerResult greedy_mult(SimContext& ctx, int k);

// Baswana-Sen cluster-cluster joining, odd and even k variants. Requires
// k >= 3 and a without-duplication partition.
SpannerResult baswana_sen(SimContext& ctx, int k, const ProtocolParams& params = {});

// One-round protocol: each player sends a local greedy (2k-1)-spanner of its
// own edges; the coordinator outputs the union.
SpannerResult simultaneous_mult(SimContext& ctx, int k);

} // namespace spanner::protocols

#endif
