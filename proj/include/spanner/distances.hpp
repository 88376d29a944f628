// distances.hpp - BFS, all-pairs distances, girth, and the stretch
// verification oracles built on them.
//
// The all-pairs and girth kernels come in two flavors: an OpenMP-parallel
// one (the default) and a serial reference used to cross-check it. A run is
// one independent BFS per source vertex, so the parallel loop is over roots.

#ifndef SPANNER_DISTANCES_HPP
#define SPANNER_DISTANCES_HPP

#include <optional>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// Unreachable pairs carry a dedicated sentinel, never a large finite value.
constexpr int32_t kInfiniteDistance = -1;
inline bool is_finite_distance(int32_t d) { return d >= 0; }

struct BfsTree {
    Vertex root = 0;
    std::vector<Vertex> parent;  // -1 for the root and unreached vertices
    std::vector<int32_t> depth;  // kInfiniteDistance when unreached

    size_t tree_size() const;                // reached vertices, root included
    std::vector<Edge> tree_edges() const;
};

BfsTree bfs(const Graph& g, Vertex root);

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, kInfiniteDistance) {}

    int n() const { return n_; }
    int32_t at(Vertex u, Vertex v) const { return d_[static_cast<size_t>(u) * n_ + v]; }
    int32_t& at(Vertex u, Vertex v) { return d_[static_cast<size_t>(u) * n_ + v]; }

private:
    int n_ = 0;
    std::vector<int32_t> d_;
};

DistanceMatrix all_pairs_distances(const Graph& g);         // OpenMP over roots
DistanceMatrix all_pairs_distances_serial(const Graph& g);  // reference kernel

// Length of the shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);         // OpenMP over roots
std::optional<int> girth_serial(const Graph& g);  // reference kernel

// d_H(u,v) <= d_G(u,v) + beta over all pairs with finite d_G.
// Requires h to be a subgraph of g on the same vertex set.
bool verify_additive(const Graph& g, const Graph& h, int beta);

// d_H(u,v) <= alpha * d_G(u,v) over all pairs with finite d_G.
bool verify_multiplicative(const Graph& g, const Graph& h, int alpha);

} // namespace spanner

#endif
