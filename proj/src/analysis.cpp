#include "spanner/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "spanner/distances.hpp"
#include "spanner/generators.hpp"

namespace spanner {

int verification_stretch(ProtocolName protocol, int k, bool* multiplicative) {
    switch (protocol) {
        case ProtocolName::Additive2:
            if (multiplicative) *multiplicative = false;
            return 2;
        case ProtocolName::AdditiveK:
            if (multiplicative) *multiplicative = false;
            return k < 6 ? 2 : k;  // delegation rule below k = 6
        case ProtocolName::GreedyMult:
        case ProtocolName::BaswanaSen:
        case ProtocolName::SimultaneousMult:
            if (multiplicative) *multiplicative = true;
            return 2 * k - 1;
    }
    throw std::logic_error("bad protocol name");
}

std::vector<SweepRow> sweep(ProtocolName protocol, const SweepGrid& grid,
                            const ProtocolParams& params, int verify_cap, int jobs) {
    if (grid.sizes.empty() || grid.player_counts.empty() || grid.ks.empty() ||
        grid.seeds.empty())
        throw std::domain_error("sweep grid must be nonempty");

    struct Point {
        int n;
        int64_t m;
        int s;
        int k;
        uint64_t seed;
    };
    std::vector<Point> points;
    for (const auto& [n, m] : grid.sizes)
        for (int s : grid.player_counts)
            for (int k : grid.ks)
                for (uint64_t seed : grid.seeds) points.push_back({n, m, s, k, seed});

    std::vector<SweepRow> rows(points.size());
    std::vector<std::string> errors(points.size());
    const int64_t count = static_cast<int64_t>(points.size());
    jobs = std::max(1, jobs);

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int64_t i = 0; i < count; ++i) {
        const Point& p = points[static_cast<size_t>(i)];
        try {
            Graph g = random_gnm(p.n, p.m, p.seed);
            EdgePartition part = partition_edges(g, p.s, grid.mode, p.seed);
            ProtocolParams run_params = params;
            run_params.k = p.k;
            SpannerResult result = run_protocol(protocol, g, part, p.seed, run_params);
            SweepRow row;
            row.protocol = to_string(protocol);
            row.n = p.n;
            row.m = p.m;
            row.s = p.s;
            row.k = p.k;
            row.seed = p.seed;
            row.bits_up = result.transcript.bits_up();
            row.bits_down = result.transcript.bits_down();
            row.total_bits = result.transcript.total_bits();
            row.rounds = result.transcript.rounds;
            row.messages = result.transcript.messages;
            row.spanner_edges = result.spanner.m();
            if (p.n <= verify_cap) {
                bool mult = false;
                int stretch = verification_stretch(protocol, p.k, &mult);
                row.verified = (mult ? verify_multiplicative(g, result.spanner, stretch)
                                     : verify_additive(g, result.spanner, stretch))
                                   ? 1
                                   : 0;
            }
            rows[static_cast<size_t>(i)] = std::move(row);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "sweep point (protocol=" << to_string(protocol) << " n=" << p.n
                << " m=" << p.m << " s=" << p.s << " k=" << p.k << " seed=" << p.seed
                << "): " << e.what();
            errors[static_cast<size_t>(i)] = msg.str();
        }
    }
    for (const std::string& err : errors)
        if (!err.empty()) throw std::runtime_error(err);
    return rows;
}

FitResult fit_exponent(const std::vector<SweepRow>& rows, const std::string& variable) {
    bool by_n;
    if (variable == "n")
        by_n = true;
    else if (variable == "s")
        by_n = false;
    else
        throw std::domain_error("fit variable must be n or s");

    std::vector<double> xs, ys;
    std::vector<int64_t> distinct;
    for (const SweepRow& row : rows) {
        int64_t x = by_n ? row.n : row.s;
        if (x <= 0 || row.total_bits == 0) continue;
        xs.push_back(std::log(static_cast<double>(x)));
        ys.push_back(std::log(static_cast<double>(row.total_bits)));
        if (std::find(distinct.begin(), distinct.end(), x) == distinct.end())
            distinct.push_back(x);
    }
    if (distinct.size() < 3)
        throw std::domain_error("fit_exponent needs >= 3 distinct values of the swept variable");

    const size_t count = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < count; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < count; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    FitResult fit;
    fit.points = count;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "protocol,n,m,s,k,seed,bits_up,bits_down,total_bits,rounds,messages,"
           "spanner_edges,verified\n";
    for (const SweepRow& r : rows) {
        out << r.protocol << ',' << r.n << ',' << r.m << ',' << r.s << ',' << r.k << ','
            << r.seed << ',' << r.bits_up << ',' << r.bits_down << ',' << r.total_bits << ','
            << r.rounds << ',' << r.messages << ',' << r.spanner_edges << ',';
        if (r.verified < 0)
            out << "unchecked";
        else
            out << r.verified;
        out << '\n';
    }
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // header row
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 13) throw ParseError("expected 13 CSV fields", line_no);
        try {
            SweepRow r;
            r.protocol = fields[0];
            r.n = std::stoi(fields[1]);
            r.m = std::stoll(fields[2]);
            r.s = std::stoi(fields[3]);
            r.k = std::stoi(fields[4]);
            r.seed = std::stoull(fields[5]);
            r.bits_up = std::stoull(fields[6]);
            r.bits_down = std::stoull(fields[7]);
            r.total_bits = std::stoull(fields[8]);
            r.rounds = std::stoull(fields[9]);
            r.messages = std::stoull(fields[10]);
            r.spanner_edges = std::stoull(fields[11]);
            r.verified = fields[12] == "unchecked" ? -1 : std::stoi(fields[12]);
            rows.push_back(std::move(r));
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed CSV field", line_no);
        }
    }
    return rows;
}

} // namespace spanner
