#include "spanner/distances.hpp"

#include <algorithm>
#include <limits>

namespace spanner {

size_t BfsTree::tree_size() const {
    size_t count = 0;
    for (int32_t d : depth)
        if (is_finite_distance(d)) ++count;
    return count;
}

std::vector<Edge> BfsTree::tree_edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < static_cast<Vertex>(parent.size()); ++v)
        if (parent[v] >= 0) out.push_back(make_edge(parent[v], v));
    return out;
}

BfsTree bfs(const Graph& g, Vertex root) {
    if (root < 0 || root >= g.n()) throw std::domain_error("bfs root out of range");
    BfsTree t;
    t.root = root;
    t.parent.assign(static_cast<size_t>(g.n()), -1);
    t.depth.assign(static_cast<size_t>(g.n()), kInfiniteDistance);
    std::vector<Vertex> queue;
    queue.reserve(static_cast<size_t>(g.n()));
    t.depth[static_cast<size_t>(root)] = 0;
    queue.push_back(root);
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
            if (!is_finite_distance(t.depth[static_cast<size_t>(w)])) {
                t.depth[static_cast<size_t>(w)] = t.depth[static_cast<size_t>(u)] + 1;
                t.parent[static_cast<size_t>(w)] = u;
                queue.push_back(w);
            }
        }
    }
    return t;
}

namespace {

void bfs_row(const Graph& g, Vertex root, int32_t* row, std::vector<Vertex>& queue) {
    std::fill(row, row + g.n(), kInfiniteDistance);
    queue.clear();
    row[root] = 0;
    queue.push_back(root);
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        int32_t du = row[u];
        for (Vertex w : g.neighbors(u)) {
            if (row[w] == kInfiniteDistance) {
                row[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
}

// Shortest cycle seen from one BFS root: the first non-tree edge closing a
// cycle bounds it by depth[x] + depth[y] + 1. The minimum over all roots is
// the exact girth of an unweighted graph.
int32_t shortest_cycle_from(const Graph& g, Vertex root, std::vector<int32_t>& depth,
                            std::vector<Vertex>& parent, std::vector<Vertex>& queue) {
    std::fill(depth.begin(), depth.end(), kInfiniteDistance);
    std::fill(parent.begin(), parent.end(), -1);
    queue.clear();
    depth[static_cast<size_t>(root)] = 0;
    queue.push_back(root);
    int32_t best = std::numeric_limits<int32_t>::max();
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        if (2 * depth[static_cast<size_t>(u)] >= best) break;
        for (Vertex w : g.neighbors(u)) {
            if (depth[static_cast<size_t>(w)] == kInfiniteDistance) {
                depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(u)] + 1;
                parent[static_cast<size_t>(w)] = u;
                queue.push_back(w);
            } else if (w != parent[static_cast<size_t>(u)]) {
                best = std::min(best, depth[static_cast<size_t>(u)] + depth[static_cast<size_t>(w)] + 1);
            }
        }
    }
    return best;
}

std::optional<int> girth_impl(const Graph& g, bool parallel) {
    const int n = g.n();
    int32_t best = std::numeric_limits<int32_t>::max();
    if (parallel) {
#pragma omp parallel
        {
            std::vector<int32_t> depth(static_cast<size_t>(n));
            std::vector<Vertex> parent(static_cast<size_t>(n)), queue;
            int32_t local = std::numeric_limits<int32_t>::max();
#pragma omp for schedule(dynamic, 8) nowait
            for (int root = 0; root < n; ++root)
                local = std::min(local, shortest_cycle_from(g, root, depth, parent, queue));
#pragma omp critical
            best = std::min(best, local);
        }
    } else {
        std::vector<int32_t> depth(static_cast<size_t>(n));
        std::vector<Vertex> parent(static_cast<size_t>(n)), queue;
        for (int root = 0; root < n; ++root)
            best = std::min(best, shortest_cycle_from(g, root, depth, parent, queue));
    }
    if (best == std::numeric_limits<int32_t>::max()) return std::nullopt;
    return static_cast<int>(best);
}

DistanceMatrix apsp_impl(const Graph& g, bool parallel) {
    const int n = g.n();
    DistanceMatrix dist(n);
    if (parallel) {
#pragma omp parallel
        {
            std::vector<Vertex> queue;
#pragma omp for schedule(dynamic, 8)
            for (int root = 0; root < n; ++root)
                bfs_row(g, root, &dist.at(root, 0), queue);
        }
    } else {
        std::vector<Vertex> queue;
        for (int root = 0; root < n; ++root)
            bfs_row(g, root, &dist.at(root, 0), queue);
    }
    return dist;
}

} // namespace

DistanceMatrix all_pairs_distances(const Graph& g) { return apsp_impl(g, true); }
DistanceMatrix all_pairs_distances_serial(const Graph& g) { return apsp_impl(g, false); }

std::optional<int> girth(const Graph& g) { return girth_impl(g, true); }
std::optional<int> girth_serial(const Graph& g) { return girth_impl(g, false); }

namespace {

void require_subgraph(const Graph& g, const Graph& h) {
    if (h.n() != g.n()) throw std::domain_error("spanner has different vertex count");
    if (!h.is_subgraph_of(g)) throw std::domain_error("spanner is not a subgraph");
}

} // namespace

bool verify_additive(const Graph& g, const Graph& h, int beta) {
    require_subgraph(g, h);
    DistanceMatrix dg = all_pairs_distances(g);
    DistanceMatrix dh = all_pairs_distances(h);
    for (Vertex u = 0; u < g.n(); ++u) {
        for (Vertex v = u + 1; v < g.n(); ++v) {
            int32_t a = dg.at(u, v);
            if (!is_finite_distance(a)) continue;  // no constraint on disconnected pairs
            int32_t b = dh.at(u, v);
            if (!is_finite_distance(b) || b > a + beta) return false;
        }
    }
    return true;
}

bool verify_multiplicative(const Graph& g, const Graph& h, int alpha) {
    require_subgraph(g, h);
    DistanceMatrix dg = all_pairs_distances(g);
    DistanceMatrix dh = all_pairs_distances(h);
    for (Vertex u = 0; u < g.n(); ++u) {
        for (Vertex v = u + 1; v < g.n(); ++v) {
            int32_t a = dg.at(u, v);
            if (!is_finite_distance(a)) continue;
            int32_t b = dh.at(u, v);
            if (!is_finite_distance(b) || b > static_cast<int64_t>(alpha) * a) return false;
        }
    }
    return true;
}

} // namespace spanner
