#include "spanner/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spanner {

void Graph::normalize() {
    std::sort(edges_.begin(), edges_.end());
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::is_subgraph_of(const Graph& g) const {
    if (n_ != g.n()) return false;
    for (const Edge& e : edges_)
        if (!g.has_edge(e.u, e.v)) return false;
    return true;
}

int encoding_bits(int64_t n) {
    if (n < 2) throw std::domain_error("encoding_bits requires n >= 2");
    return static_cast<int>(std::bit_width(static_cast<uint64_t>(n - 1)));
}

int64_t edge_index(int n, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    if (u == v || u < 0 || v >= n) throw std::domain_error("bad edge for index");
    int64_t un = u;
    return un * n - un * (un + 1) / 2 + (v - u - 1);
}

Edge edge_from_index(int n, int64_t index) {
    if (index < 0 || index >= edge_space(n)) throw std::domain_error("edge index out of range");
    // Row u starts at T(u) = u*n - u(u+1)/2; invert the quadratic, then fix
    // up the float estimate.
    auto row_start = [n](int64_t u) { return u * n - u * (u + 1) / 2; };
    double nd = static_cast<double>(n) - 0.5;
    int64_t u = static_cast<int64_t>(nd - std::sqrt(nd * nd - 2.0 * static_cast<double>(index)));
    u = std::clamp<int64_t>(u, 0, n - 2);
    while (u > 0 && row_start(u) > index) --u;
    while (u < n - 2 && row_start(u + 1) <= index) ++u;
    return Edge{static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + index - row_start(u))};
}

Graph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;    // blank
            if (line[pos] == '#') continue;            // comment / config echo
            return true;
        }
        if (required) throw ParseError("unexpected end of file", line_no);
        return false;
    };

    next_line(true);
    std::istringstream head(line);
    long long n = -1, m = -1;
    if (!(head >> n >> m) || n < 0 || m < 0) throw ParseError("expected header \"n m\"", line_no);
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        next_line(true);
        std::istringstream row(line);
        long long u, v;
        if (!(row >> u >> v)) throw ParseError("expected edge \"u v\"", line_no);
        if (u >= v) throw ParseError("edges must satisfy u < v", line_no);
        if (u < 0 || v >= n) throw ParseError("endpoint out of range", line_no);
        try {
            g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } catch (const std::domain_error& err) {
            throw ParseError(err.what(), line_no);
        }
    }
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    Graph copy = g;
    copy.normalize();
    out << copy.n() << ' ' << copy.m() << '\n';
    for (const Edge& e : copy.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    if (!header_comment.empty()) out << header_comment;
    write_graph(out, g);
}

} // namespace spanner
