#include "spanner/generators.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "spanner/prng.hpp"

namespace spanner {

size_t EdgePartition::total_assigned() const {
    size_t total = 0;
    for (const auto& edges : assignment) total += edges.size();
    return total;
}

bool EdgePartition::covers(const Graph& g) const {
    std::set<Edge> seen;
    for (const auto& edges : assignment)
        for (const Edge& e : edges) {
            if (!g.has_edge(e.u, e.v)) return false;
            seen.insert(e);
        }
    return seen.size() == g.m();
}

bool EdgePartition::pairwise_disjoint() const {
    std::set<Edge> seen;
    for (const auto& edges : assignment)
        for (const Edge& e : edges)
            if (!seen.insert(e).second) return false;
    return true;
}

PartitionMode partition_mode_from_string(const std::string& name) {
    if (name == "disjoint-random") return PartitionMode::DisjointRandom;
    if (name == "duplicated-random") return PartitionMode::DuplicatedRandom;
    if (name == "adversarial-by-vertex") return PartitionMode::AdversarialByVertex;
    throw std::domain_error("unknown partition mode: " + name);
}

std::string to_string(PartitionMode mode) {
    switch (mode) {
        case PartitionMode::DisjointRandom: return "disjoint-random";
        case PartitionMode::DuplicatedRandom: return "duplicated-random";
        case PartitionMode::AdversarialByVertex: return "adversarial-by-vertex";
    }
    throw std::logic_error("bad partition mode");
}

Graph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw std::domain_error("complete_bipartite needs a,b >= 1");
    Graph g(a + b);
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph random_gnm(int n, int64_t m, uint64_t seed) {
    int64_t space = edge_space(n);
    if (m < 0 || m > space) throw std::domain_error("random_gnm: m exceeds n(n-1)/2");
    Graph g(n);
    // Floyd's sampling: m distinct indices from [0, space), uniform.
    Prng rng(seed, "gen.gnm");
    std::set<int64_t> chosen;
    for (int64_t t = space - m; t < space; ++t) {
        int64_t r = static_cast<int64_t>(rng.below(static_cast<uint64_t>(t) + 1));
        if (!chosen.insert(r).second) chosen.insert(t);
    }
    for (int64_t idx : chosen) {
        Edge e = edge_from_index(n, idx);
        g.add_edge(e.u, e.v);
    }
    return g;
}

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; static_cast<int64_t>(d) * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// Normalized homogeneous coordinates over GF(q), first nonzero entry = 1,
// enumerated lexicographically. Exactly q^2 + q + 1 of them.
std::vector<std::array<int, 3>> projective_points(int q) {
    std::vector<std::array<int, 3>> pts;
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            for (int z = 0; z < q; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                int first = x != 0 ? x : (y != 0 ? y : z);
                if (first != 1) continue;
                pts.push_back({x, y, z});
            }
    return pts;
}

} // namespace

Graph projective_incidence(int q) {
    if (!is_prime(q)) throw std::domain_error("projective_incidence supports prime q");
    auto pts = projective_points(q);
    const int N = static_cast<int>(pts.size());
    Graph g(2 * N);
    // Lines carry the same normalized coordinates; point p lies on line l
    // iff <p,l> = 0 over GF(q).
    for (int p = 0; p < N; ++p)
        for (int l = 0; l < N; ++l) {
            int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
            if (dot % q == 0) g.add_edge(p, N + l);
        }
    return g;
}

Graph biregular_girth6(int q, int split) {
    if (!is_prime(q)) throw std::domain_error("biregular_girth6 supports prime q");
    if (split < 1 || (q + 1) % split != 0) throw std::domain_error("biregular_girth6 needs g | q+1");
    Graph base = projective_incidence(q);
    const int N = base.n() / 2;
    const int group = (q + 1) / split;
    Graph g(N + split * N);
    for (int line = 0; line < N; ++line) {
        std::vector<Vertex> pts = base.neighbors(N + line);
        std::sort(pts.begin(), pts.end());
        for (int copy = 0; copy < split; ++copy)
            for (int t = 0; t < group; ++t)
                g.add_edge(pts[static_cast<size_t>(copy * group + t)], N + line * split + copy);
    }
    return g;
}

HardInstance hard_instance_mult3(int q, int s) {
    if (s < 1) throw std::domain_error("hard_instance_mult3 needs s >= 1");
    Graph base = projective_incidence(q);
    const int N = base.n() / 2;
    HardInstance out;
    out.base_edges = base.m();
    out.graph = Graph((s + 1) * N);
    out.partition.player_count = s;
    out.partition.allow_duplication = false;
    out.partition.assignment.resize(static_cast<size_t>(s));
    for (int player = 0; player < s; ++player) {
        for (const Edge& e : base.edges()) {
            // Base edge {point, N + line} becomes {player*N + point, s*N + line}.
            Vertex point = e.u, line = e.v - N;
            Edge copy = make_edge(player * N + point, s * N + line);
            out.graph.add_edge(copy.u, copy.v);
            out.partition.assignment[static_cast<size_t>(player)].push_back(copy);
        }
    }
    return out;
}

EdgePartition partition_edges(const Graph& g, int s, PartitionMode mode, uint64_t seed) {
    if (s < 1) throw std::domain_error("partition needs s >= 1");
    EdgePartition p;
    p.player_count = s;
    p.allow_duplication = mode == PartitionMode::DuplicatedRandom;
    p.assignment.resize(static_cast<size_t>(s));
    Prng rng(seed, "gen.partition");
    for (const Edge& e : g.edges()) {
        switch (mode) {
            case PartitionMode::DisjointRandom:
                p.assignment[rng.below(static_cast<uint64_t>(s))].push_back(e);
                break;
            case PartitionMode::DuplicatedRandom: {
                // Uniform nonempty subset of players.
                if (s <= 62) {
                    uint64_t mask = 1 + rng.below((uint64_t{1} << s) - 1);
                    for (int i = 0; i < s; ++i)
                        if (mask >> i & 1) p.assignment[static_cast<size_t>(i)].push_back(e);
                } else {
                    bool any = false;
                    while (!any)
                        for (int i = 0; i < s; ++i)
                            if (rng.bernoulli(0.5)) {
                                p.assignment[static_cast<size_t>(i)].push_back(e);
                                any = true;
                            }
                }
                break;
            }
            case PartitionMode::AdversarialByVertex:
                p.assignment[splitmix64(seed ^ static_cast<uint64_t>(e.u)) %
                             static_cast<uint64_t>(s)]
                    .push_back(e);
                break;
        }
    }
    for (auto& edges : p.assignment) std::sort(edges.begin(), edges.end());
    return p;
}

EdgePartition read_partition(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        if (required) throw ParseError("unexpected end of file", line_no);
        return false;
    };

    next_line(true);
    std::istringstream head(line);
    int s = -1, n = -1, dup = -1;
    if (!(head >> s >> n >> dup) || s < 1 || n < 0 || (dup != 0 && dup != 1))
        throw ParseError("expected header \"s n allow_dup\"", line_no);
    EdgePartition p;
    p.player_count = s;
    p.allow_duplication = dup == 1;
    p.assignment.resize(static_cast<size_t>(s));
    while (next_line(false)) {
        std::istringstream row(line);
        long long player, u, v;
        if (!(row >> player >> u >> v)) throw ParseError("expected \"player u v\"", line_no);
        if (player < 0 || player >= s) throw ParseError("player out of range", line_no);
        if (u >= v || u < 0 || v >= n) throw ParseError("bad edge", line_no);
        p.assignment[static_cast<size_t>(player)].push_back(
            Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (!p.allow_duplication && !p.pairwise_disjoint())
        throw ParseError("duplicate edge in without-duplication partition", line_no);
    return p;
}

void write_partition(std::ostream& out, const EdgePartition& p, int n) {
    out << p.player_count << ' ' << n << ' ' << (p.allow_duplication ? 1 : 0) << '\n';
    for (int player = 0; player < p.player_count; ++player) {
        auto edges = p.assignment[static_cast<size_t>(player)];
        std::sort(edges.begin(), edges.end());
        for (const Edge& e : edges) out << player << ' ' << e.u << ' ' << e.v << '\n';
    }
}

EdgePartition load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    return read_partition(in);
}

void save_partition(const std::string& path, const EdgePartition& p, int n,
                    const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write partition file: " + path);
    if (!header_comment.empty()) out << header_comment;
    write_partition(out, p, n);
}

} // namespace spanner
