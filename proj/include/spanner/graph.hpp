// graph.hpp - undirected simple unweighted graph on vertices 0..n-1.

#ifndef SPANNER_GRAPH_HPP
#define SPANNER_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanner {

using Vertex = int32_t;

// Stored normalized: u < v.
struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
    if (a == b) throw std::domain_error("self-loop");
    return a < b ? Edge{a, b} : Edge{b, a};
}

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n)) {
        if (n < 0) throw std::domain_error("negative vertex count");
    }

    int n() const { return n_; }
    size_t m() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(Vertex a, Vertex b) const {
        if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return false;
        const auto& na = adj_[static_cast<size_t>(a)];
        const auto& nb = adj_[static_cast<size_t>(b)];
        const auto& shorter = na.size() <= nb.size() ? na : nb;
        Vertex target = na.size() <= nb.size() ? b : a;
        for (Vertex w : shorter)
            if (w == target) return true;
        return false;
    }

    // Rejects self-loops, out-of-range endpoints and duplicates.
    void add_edge(Vertex a, Vertex b) {
        Edge e = make_edge(a, b);
        if (e.u < 0 || e.v >= n_) throw std::domain_error("endpoint out of range");
        if (has_edge(e.u, e.v)) throw std::domain_error("duplicate edge");
        edges_.push_back(e);
        adj_[static_cast<size_t>(e.u)].push_back(e.v);
        adj_[static_cast<size_t>(e.v)].push_back(e.u);
    }

    // Insert unless already present; returns true if inserted.
    bool add_edge_if_absent(Vertex a, Vertex b) {
        Edge e = make_edge(a, b);
        if (e.u < 0 || e.v >= n_) throw std::domain_error("endpoint out of range");
        if (has_edge(e.u, e.v)) return false;
        edges_.push_back(e);
        adj_[static_cast<size_t>(e.u)].push_back(e.v);
        adj_[static_cast<size_t>(e.v)].push_back(e.u);
        return true;
    }

    // Canonical form: edge list sorted ascending. Adjacency order follows.
    void normalize();

    bool is_subgraph_of(const Graph& g) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
        Graph ac = a, bc = b;
        ac.normalize();
        bc.normalize();
        return ac.edges_ == bc.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

// Accounting unit: a vertex id out of n costs ceil(log2 n) bits. Requires n >= 2.
int encoding_bits(int64_t n);

// Row-major index of {u,v}, u < v, in the C(n,2)-dimensional edge vector.
// Shared by streams, G(n,m) sampling and stream files.
int64_t edge_index(int n, Vertex u, Vertex v);
Edge edge_from_index(int n, int64_t index);
inline int64_t edge_space(int n) { return static_cast<int64_t>(n) * (n - 1) / 2; }

// Text format: first line "n m", then m lines "u v" with 0 <= u < v < n.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    int line_number;
};

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g, const std::string& header_comment = "");

} // namespace spanner

#endif
