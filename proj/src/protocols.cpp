#include "spanner/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace spanner::protocols {

namespace {

// Per-player adjacency lists, assembled under the capability scope.
class LocalViews {
public:
    static LocalViews build(SimContext& ctx) {
        LocalViews views;
        views.adj_.resize(static_cast<size_t>(ctx.players()));
        for (int i = 0; i < ctx.players(); ++i) {
            auto& adj = views.adj_[static_cast<size_t>(i)];
            adj.resize(static_cast<size_t>(ctx.n()));
            ctx.begin_turn(i);
            for (const Edge& e : ctx.local_edges(i)) {
                adj[static_cast<size_t>(e.u)].push_back(e.v);
                adj[static_cast<size_t>(e.v)].push_back(e.u);
            }
            ctx.end_turn();
            for (auto& list : adj) std::sort(list.begin(), list.end());
        }
        return views;
    }

    const std::vector<Vertex>& neighbors(int player, Vertex v) const {
        return adj_[static_cast<size_t>(player)][static_cast<size_t>(v)];
    }

private:
    std::vector<std::vector<std::vector<Vertex>>> adj_;
};

std::vector<Edge> sorted_local_edges(SimContext& ctx, int player) {
    ctx.begin_turn(player);
    auto span = ctx.local_edges(player);
    std::vector<Edge> edges(span.begin(), span.end());
    ctx.end_turn();
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Bounded-depth reachability with stamped marks so repeated queries stay
// cheap while the spanner grows.
class BoundedBfs {
public:
    bool path_within(const Graph& f, Vertex s, Vertex t, int max_len) {
        if (s == t) return true;
        if (max_len <= 0) return false;
        if (mark_.size() < static_cast<size_t>(f.n())) {
            mark_.assign(static_cast<size_t>(f.n()), 0);
            depth_.assign(static_cast<size_t>(f.n()), 0);
        }
        ++stamp_;
        queue_.clear();
        mark_[static_cast<size_t>(s)] = stamp_;
        depth_[static_cast<size_t>(s)] = 0;
        queue_.push_back(s);
        for (size_t head = 0; head < queue_.size(); ++head) {
            Vertex u = queue_[head];
            int32_t du = depth_[static_cast<size_t>(u)];
            if (du >= max_len) break;
            for (Vertex w : f.neighbors(u)) {
                if (mark_[static_cast<size_t>(w)] == stamp_) continue;
                if (w == t) return true;
                mark_[static_cast<size_t>(w)] = stamp_;
                depth_[static_cast<size_t>(w)] = du + 1;
                queue_.push_back(w);
            }
        }
        return false;
    }

private:
    std::vector<uint64_t> mark_;
    std::vector<int32_t> depth_;
    std::vector<Vertex> queue_;
    uint64_t stamp_ = 0;
};

// Greedy girth filter over an edge stream: accept iff no cycle of length
// <= 2k appears, i.e. the endpoints are farther than 2k-1 apart so far.
void greedy_filter(Graph& f, const std::vector<Edge>& edges, int k, BoundedBfs& scratch) {
    for (const Edge& e : edges) {
        if (f.has_edge(e.u, e.v)) continue;
        if (!scratch.path_within(f, e.u, e.v, 2 * k - 1)) f.add_edge(e.u, e.v);
    }
}

struct BfsOutcome {
    BfsTree tree;
    size_t kept = 0;
};

// Shared engine for full and truncated distributed BFS.
BfsOutcome dist_bfs_impl(SimContext& ctx, const LocalViews& views, Vertex root, size_t budget) {
    const int n = ctx.n();
    if (root < 0 || root >= n) throw std::domain_error("dist_bfs root out of range");
    Wire wire = ctx.wire();
    BfsOutcome out;
    out.tree.root = root;
    out.tree.parent.assign(static_cast<size_t>(n), -1);
    out.tree.depth.assign(static_cast<size_t>(n), kInfiniteDistance);
    out.tree.depth[static_cast<size_t>(root)] = 0;
    out.kept = 1;

    std::vector<bool> ever_active(static_cast<size_t>(n), false);
    std::vector<Vertex> active{root};
    ever_active[static_cast<size_t>(root)] = true;
    int32_t level = 0;

    std::vector<bool> reported(static_cast<size_t>(n), false);
    while (!active.empty() && out.kept < budget) {
        ctx.begin_round();
        ctx.broadcast_from_coordinator(wire.vertex_set_bits(active.size()));

        // winner per vertex: first report in (player, active-vertex) order
        std::map<Vertex, Vertex> parent_of;
        for (int player = 0; player < ctx.players(); ++player) {
            size_t report_count = 0;
            std::vector<Vertex> seen_this_player;
            for (Vertex x : active) {
                for (Vertex w : views.neighbors(player, x)) {
                    if (ever_active[static_cast<size_t>(w)]) continue;
                    if (reported[static_cast<size_t>(w)]) continue;  // player-local dedupe
                    reported[static_cast<size_t>(w)] = true;
                    seen_this_player.push_back(w);
                    ++report_count;
                    parent_of.try_emplace(w, x);
                }
            }
            for (Vertex w : seen_this_player) reported[static_cast<size_t>(w)] = false;
            ctx.send_to_coordinator(player, wire.edge_set_bits(report_count));
        }

        std::vector<Vertex> next;
        for (const auto& [w, x] : parent_of) {  // ascending vertex id
            if (out.kept >= budget) break;
            out.tree.parent[static_cast<size_t>(w)] = x;
            out.tree.depth[static_cast<size_t>(w)] = level + 1;
            ever_active[static_cast<size_t>(w)] = true;
            next.push_back(w);
            ++out.kept;
        }
        active = std::move(next);
        ++level;
    }
    return out;
}

void add_tree_edges(Graph& h, const BfsTree& tree) {
    for (const Edge& e : tree.tree_edges()) h.add_edge_if_absent(e.u, e.v);
}

// Low-degree phase shared by the additive protocols: every player ships its
// edges incident to the low set; the coordinator aggregates them as E1.
void ship_low_degree_edges(SimContext& ctx, const std::vector<bool>& low, Graph& h) {
    Wire wire = ctx.wire();
    ctx.begin_round();
    for (int player = 0; player < ctx.players(); ++player) {
        ctx.begin_turn(player);
        size_t count = 0;
        for (const Edge& e : ctx.local_edges(player)) {
            if (low[static_cast<size_t>(e.u)] || low[static_cast<size_t>(e.v)]) {
                h.add_edge_if_absent(e.u, e.v);
                ++count;
            }
        }
        ctx.end_turn();
        ctx.send_to_coordinator(player, wire.edge_set_bits(count));
    }
}

std::vector<Vertex> draw_vertices(SimContext& ctx, int64_t count) {
    if (ctx.n() == 0) return {};
    std::set<Vertex> unique;
    for (int64_t i = 0; i < count; ++i)
        unique.insert(static_cast<Vertex>(ctx.coordinator_rng().below(static_cast<uint64_t>(ctx.n()))));
    return {unique.begin(), unique.end()};
}

} // namespace

int64_t coverage_sample_count(double c, double f, int n, double delta) {
    if (n < 2) return 1;
    double d = delta > 0 ? delta : 1.0 / n;
    double raw = c * f * std::log(static_cast<double>(n) / d);
    return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(raw)));
}

std::vector<int> degree_exchange(SimContext& ctx) {
    const int n = ctx.n();
    Wire wire = ctx.wire();
    std::vector<int> degrees(static_cast<size_t>(n), 0);
    ctx.begin_round();
    for (int player = 0; player < ctx.players(); ++player) {
        ctx.begin_turn(player);
        for (const Edge& e : ctx.local_edges(player)) {
            ++degrees[static_cast<size_t>(e.u)];
            ++degrees[static_cast<size_t>(e.v)];
        }
        ctx.end_turn();
        ctx.send_to_coordinator(player, static_cast<uint64_t>(n) * wire.integer_bits(std::max(2, n)));
    }
    ctx.broadcast_from_coordinator(static_cast<uint64_t>(n) * wire.integer_bits(std::max(2, n)));
    return degrees;
}

BfsTree dist_bfs(SimContext& ctx, Vertex root) {
    LocalViews views = LocalViews::build(ctx);
    return dist_bfs_impl(ctx, views, root, static_cast<size_t>(ctx.n())).tree;
}

BfsTree dist_bfs_truncated(SimContext& ctx, Vertex root, size_t budget) {
    if (budget == 0) throw std::domain_error("truncated BFS needs budget >= 1");
    LocalViews views = LocalViews::build(ctx);
    return dist_bfs_impl(ctx, views, root, budget).tree;
}

SpannerResult additive2(SimContext& ctx, const ProtocolParams& params) {
    const int n = ctx.n();
    const int s = ctx.players();
    Wire wire = ctx.wire();
    Graph h(n);
    SamplingTrace trace;

    std::vector<int> degrees = degree_exchange(ctx);
    // degree of x <= sqrt(sn), compared exactly as deg^2 <= s*n
    const int64_t sn = static_cast<int64_t>(s) * n;
    trace.degree_threshold = std::sqrt(static_cast<double>(sn));
    std::vector<bool> low(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        low[static_cast<size_t>(v)] =
            static_cast<int64_t>(degrees[static_cast<size_t>(v)]) * degrees[static_cast<size_t>(v)] <= sn;

    ship_low_degree_edges(ctx, low, h);

    int64_t samples = coverage_sample_count(
        params.c_sample, std::sqrt(static_cast<double>(n) / s), n, params.delta);
    std::vector<Vertex> roots = draw_vertices(ctx, samples);
    trace.bfs_roots = roots;
    ctx.charge_randomness_broadcast(wire.vertex_set_bits(static_cast<size_t>(samples)));

    LocalViews views = LocalViews::build(ctx);
    for (Vertex root : roots)
        add_tree_edges(h, dist_bfs_impl(ctx, views, root, static_cast<size_t>(n)).tree);

    return {std::move(h), ctx.transcript, std::move(trace)};
}

SpannerResult additive_k(SimContext& ctx, int k, const ProtocolParams& params) {
    if (k < 1) throw std::domain_error("additive_k needs k >= 1");
    if (k < 6) return additive2(ctx, params);  // Algorithm assumes k >= 6

    const int n = ctx.n();
    const int s = ctx.players();
    Wire wire = ctx.wire();
    Graph h(n);
    SamplingTrace trace;

    std::vector<int> degrees = degree_exchange(ctx);
    // degree of x <= sqrt(sn/k), compared exactly as k*deg^2 <= s*n
    const int64_t sn = static_cast<int64_t>(s) * n;
    trace.degree_threshold = std::sqrt(static_cast<double>(sn) / k);
    std::vector<bool> low(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        int64_t d = degrees[static_cast<size_t>(v)];
        low[static_cast<size_t>(v)] = k * d * d <= sn;
    }

    ship_low_degree_edges(ctx, low, h);

    int64_t full_samples =
        coverage_sample_count(params.c_sample,
                              std::sqrt(static_cast<double>(n) / (static_cast<double>(s) * k)), n,
                              params.delta) +
        coverage_sample_count(params.c_sample2, static_cast<double>(k), n, params.delta);
    int64_t truncated_samples = coverage_sample_count(
        params.c_sample, std::sqrt(static_cast<double>(k) * n / s), n, params.delta);

    std::vector<Vertex> full_roots = draw_vertices(ctx, full_samples);
    ctx.charge_randomness_broadcast(wire.vertex_set_bits(static_cast<size_t>(full_samples)));
    std::vector<Vertex> truncated_roots = draw_vertices(ctx, truncated_samples);
    ctx.charge_randomness_broadcast(wire.vertex_set_bits(static_cast<size_t>(truncated_samples)));
    trace.bfs_roots = full_roots;
    trace.truncated_roots = truncated_roots;

    LocalViews views = LocalViews::build(ctx);
    for (Vertex root : full_roots)
        add_tree_edges(h, dist_bfs_impl(ctx, views, root, static_cast<size_t>(n)).tree);
    const size_t budget = static_cast<size_t>((n + k - 1) / k);  // |T_x| = ceil(n/k)
    for (Vertex root : truncated_roots)
        add_tree_edges(h, dist_bfs_impl(ctx, views, root, budget).tree);

    return {std::move(h), ctx.transcript, std::move(trace)};
}

SpannerResult greedy_mult(SimContext& ctx, int k) {
    if (k < 1) throw std::domain_error("greedy_mult needs k >= 1");
    const int s = ctx.players();
    Wire wire = ctx.wire();
    Graph f(ctx.n());
    BoundedBfs scratch;
    for (int player = 0; player < s; ++player) {
        ctx.begin_round();
        greedy_filter(f, sorted_local_edges(ctx, player), k, scratch);
        if (player + 1 < s)
            ctx.relay_player_to_player(player, player + 1, wire.edge_set_bits(f.m()));
        else
            ctx.send_to_coordinator(player, wire.edge_set_bits(f.m()));
    }
    return {std::move(f), ctx.transcript, {}};
}

namespace {

struct ClusterLevel {
    std::vector<int32_t> cluster;  // center id, or -1 when unclustered
    std::vector<int32_t> depth;    // hops to the center inside the spanner
};

// Smallest witness edge per key, aggregated over all players; `charged`
// counts, per player, the candidates it had to send (edges the coordinator
// could not already know from the low-degree shipment).
template <typename Key>
using Candidates = std::map<Key, Edge>;

} // namespace

SpannerResult baswana_sen(SimContext& ctx, int k, [[maybe_unused]] const ProtocolParams& params) {
    // Sampling probabilities are the fixed log(n)/d1 and log(n)/d2; the
    // c_sample/delta knobs only shape coverage sample counts.
    if (k < 3) throw std::domain_error("baswana_sen needs k >= 3 (use greedy/additive2 below)");
    if (ctx.allow_duplication())
        throw std::domain_error("baswana_sen requires a without-duplication partition");

    const int n = ctx.n();
    const int s = ctx.players();
    const int ell = k % 2 == 1 ? (k - 1) / 2 : k / 2;
    Wire wire = ctx.wire();
    Graph h(n);
    SamplingTrace trace;
    trace.expansion_iterations = ell - 1;

    std::vector<int> degrees = degree_exchange(ctx);
    const double d1 = std::pow(static_cast<double>(s), 1.0 - 2.0 / k) *
                      std::pow(static_cast<double>(n), 1.0 / k);
    const double d2 = std::pow(static_cast<double>(n), 1.0 / k) /
                      std::pow(static_cast<double>(s), 2.0 / k);
    trace.degree_threshold = d1;

    std::vector<bool> low(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        low[static_cast<size_t>(v)] = static_cast<double>(degrees[static_cast<size_t>(v)]) <= d1;
    ship_low_degree_edges(ctx, low, h);
    auto in_e1 = [&](const Edge& e) {
        return low[static_cast<size_t>(e.u)] || low[static_cast<size_t>(e.v)];
    };

    // Phase 1: initialize radius-1 clusters around sampled centers.
    const double p1 = n >= 2 ? std::min(1.0, std::log2(static_cast<double>(n)) / d1) : 1.0;
    ClusterLevel level;
    level.cluster.assign(static_cast<size_t>(n), -1);
    level.depth.assign(static_cast<size_t>(n), 0);
    std::vector<int32_t> alive;
    for (Vertex v = 0; v < n; ++v) {
        if (ctx.coordinator_rng().bernoulli(p1)) {
            level.cluster[static_cast<size_t>(v)] = v;
            alive.push_back(v);
            trace.cluster_centers.push_back(v);
        }
    }
    ctx.charge_randomness_broadcast(wire.vertex_set_bits(trace.cluster_centers.size()));

    ctx.begin_round();
    {
        // Join: each non-center vertex adjacent to a center attaches to the
        // smallest such center.
        Candidates<Vertex> join;  // vertex -> witness edge to its smallest center
        std::vector<uint64_t> to_send(static_cast<size_t>(s), 0);
        for (int player = 0; player < s; ++player) {
            ctx.begin_turn(player);
            std::map<Vertex, Vertex> own_best;  // joiner -> smallest adjacent center
            for (const Edge& e : ctx.local_edges(player)) {
                auto offer = [&](Vertex joiner, Vertex center) {
                    if (level.cluster[static_cast<size_t>(joiner)] == joiner) return;  // center itself
                    auto [it, inserted] = own_best.try_emplace(joiner, center);
                    if (!inserted && center < it->second) it->second = center;
                };
                if (level.cluster[static_cast<size_t>(e.v)] == e.v) offer(e.u, e.v);
                if (level.cluster[static_cast<size_t>(e.u)] == e.u) offer(e.v, e.u);
            }
            for (const auto& [joiner, center] : own_best) {
                Edge e = make_edge(joiner, center);
                if (!in_e1(e)) ++to_send[static_cast<size_t>(player)];
                auto [it, inserted] = join.try_emplace(joiner, e);
                if (!inserted) {
                    Vertex old_center = it->second.u == joiner ? it->second.v : it->second.u;
                    if (center < old_center) it->second = e;
                }
            }
            ctx.end_turn();
        }
        for (int player = 0; player < s; ++player)
            ctx.send_to_coordinator(player, wire.edge_set_bits(to_send[static_cast<size_t>(player)]));
        for (const auto& [joiner, e] : join) {
            Vertex center = e.u == joiner ? e.v : e.u;
            level.cluster[static_cast<size_t>(joiner)] = center;
            level.depth[static_cast<size_t>(joiner)] = 1;
            h.add_edge_if_absent(e.u, e.v);
        }
    }
    {
        // High-degree vertices the sampling missed: attach one edge to each
        // adjacent cluster (the phase-2 fallback applied at level 0).
        Candidates<std::pair<Vertex, int32_t>> fallback;  // (vertex, cluster) -> edge
        std::vector<uint64_t> to_send(static_cast<size_t>(s), 0);
        for (int player = 0; player < s; ++player) {
            ctx.begin_turn(player);
            std::set<std::pair<Vertex, int32_t>> own_sent;
            for (const Edge& e : ctx.local_edges(player)) {
                auto offer = [&](Vertex v, Vertex w) {
                    if (low[static_cast<size_t>(v)]) return;
                    if (level.cluster[static_cast<size_t>(v)] != -1) return;
                    int32_t c = level.cluster[static_cast<size_t>(w)];
                    if (c == -1) return;
                    Edge edge = make_edge(v, w);
                    if (own_sent.insert({v, c}).second && !in_e1(edge))
                        ++to_send[static_cast<size_t>(player)];
                    auto [it, inserted] = fallback.try_emplace({v, c}, edge);
                    if (!inserted && edge < it->second) it->second = edge;
                };
                offer(e.u, e.v);
                offer(e.v, e.u);
            }
            ctx.end_turn();
        }
        for (int player = 0; player < s; ++player)
            ctx.send_to_coordinator(player, wire.edge_set_bits(to_send[static_cast<size_t>(player)]));
        for (const auto& [key, e] : fallback) h.add_edge_if_absent(e.u, e.v);
    }

    std::vector<ClusterLevel> snapshots{level};  // snapshots[i]: membership after iteration i

    // Phase 2: expand clusters one layer per iteration. Flow per iteration:
    // sampled-cluster list down, adjacency bit vectors up, settler list down,
    // then one join edge from the designated server per joining vertex and
    // all witness edges for settlers.
    const double p2 = n >= 2 ? std::min(1.0, std::log2(static_cast<double>(n)) / d2) : 1.0;
    for (int iter = 1; iter <= ell - 1; ++iter) {
        ctx.begin_round();
        std::set<int32_t> sampled;
        for (int32_t c : alive)
            if (ctx.coordinator_rng().bernoulli(p2)) sampled.insert(c);
        ctx.charge_randomness_broadcast(wire.vertex_set_bits(sampled.size()));

        const ClusterLevel prev = level;
        // adjacency-to-sampled indicator: one bit per vertex per server
        for (int player = 0; player < s; ++player)
            ctx.send_to_coordinator(player, static_cast<uint64_t>(n) * wire.bit());

        // Joining offers: vertex -> (smallest neighbor in a sampled cluster,
        // owning server). Without duplication the witness edge has a unique
        // owner, so ties resolve on the neighbor id alone.
        std::map<Vertex, std::pair<Vertex, int>> join;
        // Settling offers: (vertex, adjacent unsampled cluster) -> witness,
        // collected per server since every server spreads for a settler.
        Candidates<std::pair<Vertex, int32_t>> spread;
        std::vector<Candidates<std::pair<Vertex, int32_t>>> spread_by_player(
            static_cast<size_t>(s));
        for (int player = 0; player < s; ++player) {
            ctx.begin_turn(player);
            for (const Edge& e : ctx.local_edges(player)) {
                auto offer = [&](Vertex v, Vertex w) {
                    int32_t cv = prev.cluster[static_cast<size_t>(v)];
                    if (cv == -1 || sampled.count(cv)) return;  // settled or staying put
                    int32_t cw = prev.cluster[static_cast<size_t>(w)];
                    if (cw == -1) return;
                    if (sampled.count(cw)) {
                        auto [it, inserted] = join.try_emplace(v, std::pair{w, player});
                        if (!inserted && w < it->second.first) it->second = {w, player};
                    } else if (cw != cv) {
                        Edge edge = make_edge(v, w);
                        auto& own = spread_by_player[static_cast<size_t>(player)];
                        auto [own_it, own_new] = own.try_emplace({v, cw}, edge);
                        if (!own_new && edge < own_it->second) own_it->second = edge;
                        auto [it, inserted] = spread.try_emplace({v, cw}, edge);
                        if (!inserted && edge < it->second) it->second = edge;
                    }
                };
                offer(e.u, e.v);
                offer(e.v, e.u);
            }
            ctx.end_turn();
        }

        // Coordinator announces which vertices must spread to all adjacent
        // clusters (everyone else with a yes-bit joins).
        size_t settlers = 0;
        for (Vertex v = 0; v < n; ++v) {
            int32_t cv = prev.cluster[static_cast<size_t>(v)];
            if (cv != -1 && !sampled.count(cv) && !join.count(v)) ++settlers;
        }
        ctx.broadcast_from_coordinator(wire.vertex_set_bits(settlers));

        std::vector<uint64_t> to_send(static_cast<size_t>(s), 0);
        for (Vertex v = 0; v < n; ++v) {
            int32_t cv = prev.cluster[static_cast<size_t>(v)];
            if (cv == -1) continue;
            if (sampled.count(cv)) continue;  // cluster survives, membership kept
            auto join_it = join.find(v);
            if (join_it != join.end()) {
                auto [w, owner] = join_it->second;
                level.cluster[static_cast<size_t>(v)] = prev.cluster[static_cast<size_t>(w)];
                level.depth[static_cast<size_t>(v)] = prev.depth[static_cast<size_t>(w)] + 1;
                h.add_edge_if_absent(v, w);
                if (!in_e1(make_edge(v, w))) ++to_send[static_cast<size_t>(owner)];
            } else {
                level.cluster[static_cast<size_t>(v)] = -1;  // settles
            }
        }
        for (const auto& [key, e] : spread) {
            if (join.count(key.first)) continue;  // joined after all; offers unused
            h.add_edge_if_absent(e.u, e.v);
        }
        for (int player = 0; player < s; ++player) {
            for (const auto& [key, edge] : spread_by_player[static_cast<size_t>(player)]) {
                if (join.count(key.first)) continue;
                if (!in_e1(edge)) ++to_send[static_cast<size_t>(player)];
            }
            ctx.send_to_coordinator(player, wire.edge_set_bits(to_send[static_cast<size_t>(player)]));
        }
        alive.assign(sampled.begin(), sampled.end());
        snapshots.push_back(level);
    }

    // Phase 3: connect clusters pairwise. Odd k joins the final clustering to
    // itself; even k joins it to the previous level's membership snapshot.
    ctx.begin_round();
    {
        const ClusterLevel& cur = snapshots.back();
        const ClusterLevel& old =
            k % 2 == 1 ? snapshots.back() : snapshots[static_cast<size_t>(ell - 2)];
        Candidates<std::pair<int32_t, int32_t>> connect;
        std::vector<uint64_t> to_send(static_cast<size_t>(s), 0);
        for (int player = 0; player < s; ++player) {
            ctx.begin_turn(player);
            std::set<std::pair<int32_t, int32_t>> own_sent;
            for (const Edge& e : ctx.local_edges(player)) {
                auto offer = [&](Vertex a, Vertex b) {
                    int32_t ca = cur.cluster[static_cast<size_t>(a)];
                    int32_t cb = old.cluster[static_cast<size_t>(b)];
                    if (ca == -1 || cb == -1 || ca == cb) return;
                    std::pair<int32_t, int32_t> key =
                        k % 2 == 1 ? std::pair<int32_t, int32_t>{std::min(ca, cb), std::max(ca, cb)}
                                   : std::pair<int32_t, int32_t>{ca, cb};
                    Edge edge = make_edge(a, b);
                    if (own_sent.insert(key).second && !in_e1(edge))
                        ++to_send[static_cast<size_t>(player)];
                    auto [it, inserted] = connect.try_emplace(key, edge);
                    if (!inserted && edge < it->second) it->second = edge;
                };
                offer(e.u, e.v);
                offer(e.v, e.u);
            }
            ctx.end_turn();
        }
        for (int player = 0; player < s; ++player)
            ctx.send_to_coordinator(player, wire.edge_set_bits(to_send[static_cast<size_t>(player)]));
        for (const auto& [key, e] : connect) h.add_edge_if_absent(e.u, e.v);
    }

    trace.final_cluster = snapshots.back().cluster;
    trace.final_depth = snapshots.back().depth;
    return {std::move(h), ctx.transcript, std::move(trace)};
}

SpannerResult simultaneous_mult(SimContext& ctx, int k) {
    if (k < 1) throw std::domain_error("simultaneous_mult needs k >= 1");
    if (ctx.mode() != Mode::Simultaneous)
        throw ProtocolViolation("simultaneous_mult requires simultaneous mode");
    Wire wire = ctx.wire();
    Graph h(ctx.n());
    ctx.begin_round();
    BoundedBfs scratch;
    for (int player = 0; player < ctx.players(); ++player) {
        Graph local(ctx.n());
        greedy_filter(local, sorted_local_edges(ctx, player), k, scratch);
        ctx.send_to_coordinator(player, wire.edge_set_bits(local.m()));
        for (const Edge& e : local.edges()) h.add_edge_if_absent(e.u, e.v);
    }
    return {std::move(h), ctx.transcript, {}};
}

} // namespace spanner::protocols
