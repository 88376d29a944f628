// generators.hpp - deterministic constructors for test inputs: random graphs,
// projective-plane incidence graphs, their biregular splits, the replicated
// hard instance for multiplicative 3-spanners, and edge partitions.

#ifndef SPANNER_GENERATORS_HPP
#define SPANNER_GENERATORS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// Assignment of a graph's edges to s players. Without duplication the player
// edge sets partition the edge set; with duplication they may overlap but
// must still cover it.
struct EdgePartition {
    int player_count = 0;
    bool allow_duplication = false;
    std::vector<std::vector<Edge>> assignment;

    size_t total_assigned() const;
    // Union covers g's edges exactly; disjointness when duplication is off.
    bool covers(const Graph& g) const;
    bool pairwise_disjoint() const;
};

enum class PartitionMode {
    DisjointRandom,      // each edge to one uniform player
    DuplicatedRandom,    // each edge to a uniform nonempty player subset
    AdversarialByVertex, // player chosen by hashing the lower endpoint
};

PartitionMode partition_mode_from_string(const std::string& name);
std::string to_string(PartitionMode mode);

Graph complete_bipartite(int a, int b);

// Uniform simple graph with exactly m edges; identical output per seed.
Graph random_gnm(int n, int64_t m, uint64_t seed);

// Point-line incidence graph of PG(2,q): bipartite, (q+1)-regular on
// 2(q^2+q+1) vertices, girth 6. Points occupy ids [0, q^2+q+1), lines the
// rest. Supports prime q.
Graph projective_incidence(int q);

// Split every line vertex of projective_incidence(q) into g copies, each
// taking (q+1)/g consecutive incident points (sorted by point id). Left side
// keeps q^2+q+1 vertices of degree q+1; the split side has g(q^2+q+1)
// vertices of degree (q+1)/g. Cycles project onto closed walks of equal
// length in the base graph, so girth stays >= 6. Requires g | q+1.
Graph biregular_girth6(int q, int g);

// s vertex-disjoint copies of the point side of projective_incidence(q)
// sharing one line side; player i owns exactly the edges of its own copy.
// Copy i's points occupy [i*N, (i+1)*N), lines [s*N, (s+1)*N), N = q^2+q+1.
struct HardInstance {
    Graph graph;
    EdgePartition partition;
    size_t base_edges = 0; // edges of one copy
};
HardInstance hard_instance_mult3(int q, int s);

EdgePartition partition_edges(const Graph& g, int s, PartitionMode mode, uint64_t seed);

// Partition file format: header "s n allow_dup", then lines "player u v".
EdgePartition read_partition(std::istream& in);
void write_partition(std::ostream& out, const EdgePartition& p, int n);
EdgePartition load_partition(const std::string& path);
void save_partition(const std::string& path, const EdgePartition& p, int n,
                    const std::string& header_comment = "");

} // namespace spanner

#endif
