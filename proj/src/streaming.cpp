#include "spanner/streaming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "spanner/prng.hpp"

namespace spanner {

namespace {

constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

uint64_t mulmod61(uint64_t a, uint64_t b) {
    __uint128_t p = static_cast<__uint128_t>(a) * b;
    uint64_t lo = static_cast<uint64_t>(p & kMersenne61);
    uint64_t hi = static_cast<uint64_t>(p >> 61);
    uint64_t r = lo + hi;
    if (r >= kMersenne61) r -= kMersenne61;
    return r;
}

uint64_t powmod61(uint64_t base, uint64_t exp) {
    uint64_t acc = 1;
    base %= kMersenne61;
    while (exp) {
        if (exp & 1) acc = mulmod61(acc, base);
        base = mulmod61(base, base);
        exp >>= 1;
    }
    return acc;
}

uint64_t signed_mod61(int64_t x) {
    int64_t r = x % static_cast<int64_t>(kMersenne61);
    if (r < 0) r += static_cast<int64_t>(kMersenne61);
    return static_cast<uint64_t>(r);
}

} // namespace

Graph net_graph(const TurnstileStream& stream) {
    std::map<int64_t, int64_t> counts;
    for (const auto& [index, delta] : stream.updates) {
        if (index < 0 || index >= edge_space(stream.n))
            throw std::domain_error("stream update index out of range");
        counts[index] += delta;
    }
    Graph g(stream.n);
    for (const auto& [index, count] : counts) {
        if (count < 0) throw std::domain_error("negative net edge count at stream end");
        if (count > 0) {
            Edge e = edge_from_index(stream.n, index);
            g.add_edge(e.u, e.v);
        }
    }
    return g;
}

TurnstileStream read_stream(std::istream& in) {
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
    long long n = -1, count = -1;
    if (!(head >> n >> count) || n < 0 || count < 0)
        throw ParseError("expected header \"n u_count\"", line_no);
    TurnstileStream s;
    s.n = static_cast<int>(n);
    for (long long i = 0; i < count; ++i) {
        next_line(true);
        std::istringstream row(line);
        long long index, delta;
        if (!(row >> index >> delta) || (delta != 1 && delta != -1))
            throw ParseError("expected \"edge_index delta\" with delta in {+1,-1}", line_no);
        if (index < 0 || index >= edge_space(s.n))
            throw ParseError("edge index out of range", line_no);
        s.updates.emplace_back(index, static_cast<int32_t>(delta));
    }
    return s;
}

void write_stream(std::ostream& out, const TurnstileStream& stream) {
    out << stream.n << ' ' << stream.updates.size() << '\n';
    for (const auto& [index, delta] : stream.updates) out << index << ' ' << delta << '\n';
}

TurnstileStream load_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream file: " + path);
    return read_stream(in);
}

void save_stream(const std::string& path, const TurnstileStream& stream,
                 const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stream file: " + path);
    if (!header_comment.empty()) out << header_comment;
    write_stream(out, stream);
}

void OneSparseCell::add(int64_t index, int64_t delta, uint64_t r) {
    weight += delta;
    weighted_index_sum += index * delta;
    uint64_t term = mulmod61(signed_mod61(delta), powmod61(r, static_cast<uint64_t>(index)));
    fingerprint += term;
    if (fingerprint >= kMersenne61) fingerprint -= kMersenne61;
}

void OneSparseCell::merge(const OneSparseCell& other) {
    weight += other.weight;
    weighted_index_sum += other.weighted_index_sum;
    fingerprint += other.fingerprint;
    if (fingerprint >= kMersenne61) fingerprint -= kMersenne61;
}

std::optional<int64_t> OneSparseCell::recover(int64_t dimension, uint64_t r) const {
    if (weight == 0) return std::nullopt;
    if (weighted_index_sum % weight != 0) return std::nullopt;
    int64_t index = weighted_index_sum / weight;
    if (index < 0 || index >= dimension) return std::nullopt;
    uint64_t expect = mulmod61(signed_mod61(weight), powmod61(r, static_cast<uint64_t>(index)));
    if (expect != fingerprint) return std::nullopt;
    return index;
}

L0Sampler::L0Sampler(int64_t dimension, uint64_t key, int repetitions, int levels)
    : dimension_(dimension),
      key_(key),
      reps_(std::max(1, repetitions)),
      levels_(std::max(1, levels)),
      cells_(static_cast<size_t>(reps_) * static_cast<size_t>(levels_)) {
    if (dimension < 1) throw std::domain_error("sampler dimension must be positive");
}

L0Sampler L0Sampler::for_domain(int64_t dimension, uint64_t key, int64_t domain, int n) {
    domain = std::max<int64_t>(1, domain);
    if (domain == 1) return L0Sampler(dimension, key, 1, 1);
    int levels = static_cast<int>(std::bit_width(static_cast<uint64_t>(domain))) + 1;
    int reps = std::max(6, 3 * encoding_bits(std::max(2, n)));
    return L0Sampler(dimension, key, reps, levels);
}

uint64_t L0Sampler::level_hash(int rep, int64_t index) const {
    return splitmix64(key_ ^ splitmix64(static_cast<uint64_t>(rep) * 0x9e3779b97f4a7c15ULL ^
                                        static_cast<uint64_t>(index)));
}

uint64_t L0Sampler::fingerprint_base(int rep) const {
    // in [2, p-1]
    return 2 + splitmix64(key_ * 0xda942042e4dd58b5ULL + static_cast<uint64_t>(rep)) %
                   (kMersenne61 - 2);
}

void L0Sampler::update(int64_t index, int32_t delta) {
    if (index < 0 || index >= dimension_) throw std::domain_error("sampler index out of range");
    for (int rep = 0; rep < reps_; ++rep) {
        uint64_t r = fingerprint_base(rep);
        // nested levels: index lives in levels 0..countl_zero(hash)
        int deepest = std::min(levels_ - 1, std::countl_zero(level_hash(rep, index) | 1));
        for (int level = 0; level <= deepest; ++level)
            cells_[static_cast<size_t>(rep) * levels_ + level].add(index, delta, r);
    }
}

std::optional<int64_t> L0Sampler::query(uint64_t query_seed) const {
    int start = reps_ > 1 ? static_cast<int>(query_seed % static_cast<uint64_t>(reps_)) : 0;
    for (int i = 0; i < reps_; ++i) {
        int rep = (start + i) % reps_;
        uint64_t r = fingerprint_base(rep);
        for (int level = 0; level < levels_; ++level) {
            auto hit = cells_[static_cast<size_t>(rep) * levels_ + level].recover(dimension_, r);
            if (hit) return hit;
        }
    }
    return std::nullopt;
}

bool L0Sampler::definitely_empty() const {
    return cells_[0].empty();  // rep 0, level 0 sees every update
}

void L0Sampler::merge(const L0Sampler& other) {
    if (dimension_ != other.dimension_ || key_ != other.key_ || reps_ != other.reps_ ||
        levels_ != other.levels_)
        throw std::invalid_argument("cannot merge samplers with different shape or hashes");
    for (size_t i = 0; i < cells_.size(); ++i) cells_[i].merge(other.cells_[i]);
}

uint64_t L0Sampler::words() const { return 3 * static_cast<uint64_t>(cells_.size()) + 2; }

bool operator==(const L0Sampler& a, const L0Sampler& b) {
    if (a.dimension_ != b.dimension_ || a.key_ != b.key_ || a.reps_ != b.reps_ ||
        a.levels_ != b.levels_)
        return false;
    for (size_t i = 0; i < a.cells_.size(); ++i) {
        if (a.cells_[i].weight != b.cells_[i].weight ||
            a.cells_[i].weighted_index_sum != b.cells_[i].weighted_index_sum ||
            a.cells_[i].fingerprint != b.cells_[i].fingerprint)
            return false;
    }
    return true;
}

namespace {

struct Membership {
    std::vector<int32_t> cluster;  // center id, -1 unclustered
    std::vector<int32_t> depth;
};

uint64_t sampler_key(uint64_t seed, int pass, uint64_t kind, int64_t a, int64_t b) {
    uint64_t h = splitmix64(seed ^ kind);
    h = splitmix64(h ^ static_cast<uint64_t>(pass) * 0x2545f4914f6cdd1dULL);
    h = splitmix64(h ^ static_cast<uint64_t>(a) * 0x9e3779b97f4a7c15ULL);
    return splitmix64(h ^ static_cast<uint64_t>(b));
}

} // namespace

StreamResult stream_spanner(const TurnstileStream& stream, int k, uint64_t seed) {
    if (k < 2) throw std::domain_error("stream_spanner needs k >= 2");
    const int n = stream.n;
    const int ell = k / 2;
    const int64_t dim = edge_space(n);
    StreamResult out;
    out.spanner = Graph(n);
    if (n < 2) {
        out.passes = ell + 1;
        return out;
    }

    // Decode updates once; each pass replays this vector.
    std::vector<Edge> decoded(stream.updates.size());
    for (size_t i = 0; i < stream.updates.size(); ++i)
        decoded[i] = edge_from_index(n, stream.updates[i].first);

    const double sample_p = std::pow(static_cast<double>(n), -1.0 / k);
    Prng rng(seed, "stream.sampling");
    auto account = [&out](const L0Sampler& s) {
        out.sampler_count += 1;
        out.words_used += s.words();
    };

    Membership level;
    level.cluster.assign(static_cast<size_t>(n), -1);
    level.depth.assign(static_cast<size_t>(n), 0);
    std::vector<int32_t> alive;

    // ---- Pass 1: initialize clusters around sampled centers ----
    std::vector<bool> is_center(static_cast<size_t>(n), false);
    for (Vertex v = 0; v < n; ++v)
        if (rng.bernoulli(sample_p)) is_center[static_cast<size_t>(v)] = true;

    std::map<Vertex, L0Sampler> join;
    // Neighbor slots: one exact detector per (vertex, touched neighbor),
    // realized as shared per-edge counters. Net counts feed the fallback
    // that keeps every incident edge of an unclustered vertex.
    std::map<int64_t, int64_t> edge_count;
    std::vector<std::vector<int64_t>> touched(static_cast<size_t>(n));

    out.passes += 1;
    for (size_t i = 0; i < stream.updates.size(); ++i) {
        const auto& [index, delta] = stream.updates[i];
        const Edge e = decoded[i];
        auto feed_join = [&](Vertex u, Vertex w) {
            if (is_center[static_cast<size_t>(u)] || !is_center[static_cast<size_t>(w)]) return;
            auto it = join.find(u);
            if (it == join.end()) {
                it = join.emplace(u, L0Sampler::for_domain(dim, sampler_key(seed, 1, 'J', u, 0),
                                                           n - 1, n))
                         .first;
            }
            it->second.update(index, delta);
        };
        feed_join(e.u, e.v);
        feed_join(e.v, e.u);
        auto [slot, fresh] = edge_count.try_emplace(index, 0);
        if (fresh) {
            touched[static_cast<size_t>(e.u)].push_back(index);
            touched[static_cast<size_t>(e.v)].push_back(index);
        }
        slot->second += delta;
    }
    for (const auto& [v, s] : join) account(s);
    out.words_used += 2 * static_cast<uint64_t>(edge_count.size());
    out.sampler_count += 2 * static_cast<uint64_t>(edge_count.size());

    for (Vertex v = 0; v < n; ++v) {
        if (is_center[static_cast<size_t>(v)]) {
            level.cluster[static_cast<size_t>(v)] = v;
            level.depth[static_cast<size_t>(v)] = 0;
            alive.push_back(v);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (is_center[static_cast<size_t>(v)]) continue;
        auto it = join.find(v);
        std::optional<int64_t> hit =
            it != join.end() ? it->second.query() : std::nullopt;
        if (hit) {
            Edge e = edge_from_index(n, *hit);
            Vertex center = e.u == v ? e.v : e.u;
            level.cluster[static_cast<size_t>(v)] = center;
            level.depth[static_cast<size_t>(v)] = 1;
            out.spanner.add_edge_if_absent(e.u, e.v);
        } else {
            // unclustered: keep one edge per adjacent singleton, i.e. every
            // incident edge with positive net count
            for (int64_t index : touched[static_cast<size_t>(v)]) {
                if (edge_count[index] > 0) {
                    Edge e = edge_from_index(n, index);
                    out.spanner.add_edge_if_absent(e.u, e.v);
                }
            }
        }
    }
    std::vector<Membership> snapshots{level};

    // ---- Passes 2..ell: expand clusters one layer per pass ----
    for (int iter = 1; iter <= ell - 1; ++iter) {
        std::set<int32_t> sampled;
        for (int32_t c : alive)
            if (rng.bernoulli(sample_p)) sampled.insert(c);

        const Membership prev = level;
        std::map<Vertex, L0Sampler> join2;
        std::map<std::pair<Vertex, int32_t>, L0Sampler> slots;
        std::vector<int64_t> members(static_cast<size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v)
            if (prev.cluster[static_cast<size_t>(v)] != -1)
                ++members[static_cast<size_t>(prev.cluster[static_cast<size_t>(v)])];

        out.passes += 1;
        for (size_t i = 0; i < stream.updates.size(); ++i) {
            const auto& [index, delta] = stream.updates[i];
            const Edge e = decoded[i];
            auto feed = [&](Vertex v, Vertex w) {
                int32_t cv = prev.cluster[static_cast<size_t>(v)];
                if (cv == -1 || sampled.count(cv)) return;
                int32_t cw = prev.cluster[static_cast<size_t>(w)];
                if (cw == -1) return;
                if (sampled.count(cw)) {
                    auto it = join2.find(v);
                    if (it == join2.end())
                        it = join2
                                 .emplace(v, L0Sampler::for_domain(
                                                 dim, sampler_key(seed, iter + 1, 'J', v, 0),
                                                 n - 1, n))
                                 .first;
                    it->second.update(index, delta);
                } else if (cw != cv) {
                    auto key = std::pair<Vertex, int32_t>{v, cw};
                    auto it = slots.find(key);
                    if (it == slots.end())
                        it = slots
                                 .emplace(key, L0Sampler::for_domain(
                                                   dim, sampler_key(seed, iter + 1, 'S', v, cw),
                                                   members[static_cast<size_t>(cw)], n))
                                 .first;
                    it->second.update(index, delta);
                }
            };
            feed(e.u, e.v);
            feed(e.v, e.u);
        }
        for (const auto& [v, s] : join2) account(s);
        for (const auto& [key, s] : slots) account(s);

        for (Vertex v = 0; v < n; ++v) {
            int32_t cv = prev.cluster[static_cast<size_t>(v)];
            if (cv == -1 || sampled.count(cv)) continue;
            auto it = join2.find(v);
            std::optional<int64_t> hit = it != join2.end() ? it->second.query() : std::nullopt;
            if (hit) {
                // the sampler held only edges incident to v, so the other
                // endpoint sits inside the sampled cluster being joined
                Edge e = edge_from_index(n, *hit);
                Vertex inside = e.u == v ? e.v : e.u;
                level.cluster[static_cast<size_t>(v)] =
                    prev.cluster[static_cast<size_t>(inside)];
                level.depth[static_cast<size_t>(v)] =
                    prev.depth[static_cast<size_t>(inside)] + 1;
                out.spanner.add_edge_if_absent(e.u, e.v);
            } else {
                level.cluster[static_cast<size_t>(v)] = -1;
                for (auto it2 = slots.lower_bound({v, INT32_MIN});
                     it2 != slots.end() && it2->first.first == v; ++it2) {
                    auto recovered = it2->second.query();
                    if (recovered) {
                        Edge e = edge_from_index(n, *recovered);
                        out.spanner.add_edge_if_absent(e.u, e.v);
                    }
                }
            }
        }
        alive.assign(sampled.begin(), sampled.end());
        snapshots.push_back(level);
    }

    // ---- Final pass: connect cluster pairs ----
    {
        const Membership& cur = snapshots.back();
        const bool singleton_old = k % 2 == 0 && ell - 2 < 0;  // k = 2
        const Membership& old =
            k % 2 == 1 ? snapshots.back()
                       : snapshots[static_cast<size_t>(std::max(0, ell - 2))];
        std::vector<int64_t> cur_members(static_cast<size_t>(n), 0),
            old_members(static_cast<size_t>(n), 1);
        for (Vertex v = 0; v < n; ++v)
            if (cur.cluster[static_cast<size_t>(v)] != -1)
                ++cur_members[static_cast<size_t>(cur.cluster[static_cast<size_t>(v)])];
        if (!singleton_old) {
            old_members.assign(static_cast<size_t>(n), 0);
            for (Vertex v = 0; v < n; ++v)
                if (old.cluster[static_cast<size_t>(v)] != -1)
                    ++old_members[static_cast<size_t>(old.cluster[static_cast<size_t>(v)])];
        }
        auto old_cluster_of = [&](Vertex v) -> int32_t {
            return singleton_old ? v : old.cluster[static_cast<size_t>(v)];
        };

        std::map<std::pair<int32_t, int32_t>, L0Sampler> pairs;
        out.passes += 1;
        for (size_t i = 0; i < stream.updates.size(); ++i) {
            const auto& [index, delta] = stream.updates[i];
            const Edge e = decoded[i];
            auto feed = [&](Vertex a, Vertex b) {
                int32_t ca = cur.cluster[static_cast<size_t>(a)];
                int32_t cb = old_cluster_of(b);
                if (ca == -1 || cb == -1 || ca == cb) return;
                std::pair<int32_t, int32_t> key =
                    k % 2 == 1 ? std::pair<int32_t, int32_t>{std::min(ca, cb), std::max(ca, cb)}
                               : std::pair<int32_t, int32_t>{ca, cb};
                auto it = pairs.find(key);
                if (it == pairs.end())
                    it = pairs
                             .emplace(key, L0Sampler::for_domain(
                                               dim, sampler_key(seed, 1000, 'P', key.first,
                                                                key.second),
                                               cur_members[static_cast<size_t>(ca)] *
                                                   old_members[static_cast<size_t>(cb)],
                                               n))
                             .first;
                it->second.update(index, delta);
            };
            feed(e.u, e.v);
            feed(e.v, e.u);
        }
        for (const auto& [key, s] : pairs) {
            account(s);
            auto hit = s.query();
            if (hit) {
                Edge e = edge_from_index(n, *hit);
                out.spanner.add_edge_if_absent(e.u, e.v);
            }
        }
    }

    // Nominal allocation had laziness not trimmed it: per clustering pass n
    // join samplers plus n^(1+1/k) log n neighbor slots, plus one sampler per
    // cluster pair at the end, each of O(log^2) words.
    const double logn = std::log2(static_cast<double>(std::max(2, n)));
    const double per_sampler =
        3.0 * (3.0 * logn) * (std::bit_width(static_cast<uint64_t>(dim)) + 1);
    out.words_formula = static_cast<uint64_t>(
        std::ceil(ell * (n + std::pow(n, 1.0 + 1.0 / k) * logn) * per_sampler +
                  std::pow(n, 2.0 - 2.0 / k) * per_sampler));
    return out;
}

TurnstileStream make_churn_stream(const Graph& g, double churn_fraction, uint64_t seed) {
    if (churn_fraction < 0) throw std::domain_error("churn fraction must be nonnegative");
    Prng rng(seed, "stream.churn");
    TurnstileStream s;
    s.n = g.n();
    std::vector<std::pair<int64_t, int32_t>> events;
    for (const Edge& e : g.edges()) events.emplace_back(edge_index(g.n(), e.u, e.v), 1);
    const size_t pairs =
        static_cast<size_t>(churn_fraction * static_cast<double>(g.m()));
    for (size_t i = 0; i < pairs && edge_space(g.n()) > 0; ++i) {
        int64_t idx = static_cast<int64_t>(rng.below(static_cast<uint64_t>(edge_space(g.n()))));
        events.emplace_back(idx, 1);
        events.emplace_back(idx, -1);
    }
    for (size_t i = events.size(); i > 1; --i) std::swap(events[i - 1], events[rng.below(i)]);
    // shuffle may have put a deletion ahead of its insertion; repair per index
    std::map<int64_t, int64_t> running;
    for (size_t i = 0; i < events.size(); ++i) {
        auto& [idx, delta] = events[i];
        if (running[idx] == 0 && delta == -1) {
            for (size_t j = i + 1; j < events.size(); ++j)
                if (events[j].first == idx && events[j].second == 1) {
                    std::swap(events[i].second, events[j].second);
                    break;
                }
        }
        running[idx] += events[i].second;
    }
    s.updates = std::move(events);
    return s;
}

} // namespace spanner
