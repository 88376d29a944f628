// spannersim - single binary exposing the generators, protocol runs,
// streaming runs, verification, sweeps and scaling fits.
//
// Exit codes: 0 success, 1 requested verification failed, 2 usage or input
// errors. Every output file starts with a comment echoing the invocation, so
// identical commands produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spanner/analysis.hpp"
#include "spanner/distances.hpp"
#include "spanner/generators.hpp"
#include "spanner/graph.hpp"
#include "spanner/simnet.hpp"
#include "spanner/streaming.hpp"

using namespace spanner;

namespace {

std::string config_echo(int argc, char** argv) {
    std::ostringstream out;
    out << "# spannersim";
    for (int i = 1; i < argc; ++i) out << ' ' << argv[i];
    out << '\n';
    return out.str();
}

// Output goes to the named file, or stdout when no path was given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot write output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<int64_t> parse_int_list(const std::string& csv) {
    std::vector<int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    return out;
}

int run_command(int argc, char** argv) {
    CLI::App app{"communication-metered graph spanner simulator"};
    app.require_subcommand(1);
    const std::string echo = config_echo(argc, argv);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "write generator outputs to graph/partition files");
    gen->require_subcommand(1);
    struct {
        int q = 2, split = 1, a = 1, b = 1, n = 16, s = 2;
        int64_t m = 0;
        uint64_t seed = 1;
        double churn = 0.2;
        std::string mode = "disjoint-random", graph_in, out, partition_out;
    } g_opt;

    auto* gen_proj = gen->add_subcommand("projective", "point-line incidence graph of PG(2,q)");
    gen_proj->add_option("--q", g_opt.q, "prime order")->required();
    gen_proj->add_option("-o,--out", g_opt.out, "output graph file");

    auto* gen_bireg = gen->add_subcommand("biregular", "girth-6 biregular split of PG(2,q)");
    gen_bireg->add_option("--q", g_opt.q, "prime order")->required();
    gen_bireg->add_option("--g", g_opt.split, "split factor, divides q+1")->required();
    gen_bireg->add_option("-o,--out", g_opt.out, "output graph file");

    auto* gen_hard = gen->add_subcommand("hard-mult3", "replicated-side hard instance");
    gen_hard->add_option("--q", g_opt.q, "prime order")->required();
    gen_hard->add_option("--s", g_opt.s, "player count")->required();
    gen_hard->add_option("-o,--out", g_opt.out, "output graph file");
    gen_hard->add_option("-p,--partition-out", g_opt.partition_out, "output partition file");

    auto* gen_gnm = gen->add_subcommand("gnm", "uniform random graph with exactly m edges");
    gen_gnm->add_option("--n", g_opt.n, "vertices")->required();
    gen_gnm->add_option("--m", g_opt.m, "edges")->required();
    gen_gnm->add_option("--seed", g_opt.seed, "seed");
    gen_gnm->add_option("-o,--out", g_opt.out, "output graph file");

    auto* gen_kab = gen->add_subcommand("complete-bipartite", "complete bipartite K_{a,b}");
    gen_kab->add_option("--a", g_opt.a, "left side")->required();
    gen_kab->add_option("--b", g_opt.b, "right side")->required();
    gen_kab->add_option("-o,--out", g_opt.out, "output graph file");

    auto* gen_part = gen->add_subcommand("partition", "assign a graph's edges to players");
    gen_part->add_option("--graph", g_opt.graph_in, "input graph file")->required();
    gen_part->add_option("--s", g_opt.s, "player count")->required();
    gen_part->add_option("--mode", g_opt.mode,
                         "disjoint-random | duplicated-random | adversarial-by-vertex");
    gen_part->add_option("--seed", g_opt.seed, "seed");
    gen_part->add_option("-o,--out", g_opt.out, "output partition file");

    auto* gen_stream = gen->add_subcommand("stream", "turnstile stream netting to a graph");
    gen_stream->add_option("--graph", g_opt.graph_in, "input graph file")->required();
    gen_stream->add_option("--churn", g_opt.churn, "insert+delete pairs per edge");
    gen_stream->add_option("--seed", g_opt.seed, "seed");
    gen_stream->add_option("-o,--out", g_opt.out, "output stream file");

    // ---- run ----
    struct {
        std::string graph, partition, out, out_spanner;
        uint64_t seed = 1;
        int k = 2;
        double c_sample = 2.0, c_sample2 = 2.0, delta = -1.0;
        bool free_randomness = false, verify = false;
        int verify_cap = 256;
    } r_opt;
    auto* run = app.add_subcommand("run", "execute a protocol on a partitioned graph");
    run->require_subcommand(1);
    std::vector<CLI::App*> run_subs;
    for (const char* name : {"additive2", "additive-k", "greedy", "baswana-sen", "simultaneous"})
        run_subs.push_back(run->add_subcommand(name));
    for (CLI::App* sub : run_subs) {
        sub->add_option("--graph", r_opt.graph, "input graph file")->required();
        sub->add_option("--partition", r_opt.partition, "input partition file")->required();
        sub->add_option("--seed", r_opt.seed, "run seed");
        sub->add_option("--k", r_opt.k, "stretch parameter k");
        sub->add_option("--beta", r_opt.k, "additive distortion (alias for --k)")
            ->excludes("--k");
        sub->add_option("--c-sample", r_opt.c_sample, "sample-count multiplier");
        sub->add_option("--c-sample2", r_opt.c_sample2, "multiplier for additive-k's O(k) term");
        sub->add_option("--delta", r_opt.delta, "coverage failure target (default 1/n)");
        sub->add_flag("--free-randomness", r_opt.free_randomness,
                      "do not charge the sampling broadcasts");
        sub->add_flag("--verify", r_opt.verify, "check the stretch oracle, exit 1 on failure");
        sub->add_option("--verify-cap", r_opt.verify_cap, "skip verification above this n");
        sub->add_option("--out-spanner", r_opt.out_spanner, "write the spanner graph here");
        sub->add_option("-o,--out", r_opt.out, "output CSV file");
    }

    // ---- stream-run ----
    struct {
        std::string stream, out, out_graph;
        int k = 3;
        uint64_t seed = 1;
        bool passes_check = false, verify = false;
        int verify_cap = 256;
    } sr_opt;
    auto* srun = app.add_subcommand("stream-run", "multi-pass spanner over a turnstile stream");
    srun->add_option("--stream", sr_opt.stream, "input stream file")->required();
    srun->add_option("--k", sr_opt.k, "stretch parameter")->required();
    srun->add_option("--seed", sr_opt.seed, "run seed");
    srun->add_flag("--passes-check", sr_opt.passes_check, "fail unless passes = floor(k/2)+1");
    srun->add_flag("--verify", sr_opt.verify, "check x(2k-1) against the net graph");
    srun->add_option("--verify-cap", sr_opt.verify_cap, "skip verification above this n");
    srun->add_option("--out-graph", sr_opt.out_graph, "write the spanner graph here");
    srun->add_option("-o,--out", sr_opt.out, "output CSV file");

    // ---- verify ----
    struct {
        std::string graph, spanner;
        int mult = 0, add = -1;
    } v_opt;
    auto* verify = app.add_subcommand("verify", "stretch-check a spanner file against a graph");
    verify->add_option("--graph", v_opt.graph, "input graph file")->required();
    verify->add_option("--spanner", v_opt.spanner, "candidate spanner file")->required();
    auto* vm = verify->add_option("--mult", v_opt.mult, "multiplicative stretch alpha");
    auto* va = verify->add_option("--add", v_opt.add, "additive distortion beta");
    vm->excludes(va);

    // ---- sweep ----
    struct {
        std::string protocol = "greedy", n_list, m_list, s_list = "2", k_list = "2";
        std::string mode = "disjoint-random", out;
        int seeds = 1;
        uint64_t seed_base = 1;
        int jobs = 1, verify_cap = 256;
        double c_sample = 2.0, c_sample2 = 2.0, delta = -1.0;
        bool free_randomness = false;
    } sw_opt;
    auto* sw = app.add_subcommand("sweep", "grid of runs over n, s, k and seeds");
    sw->add_option("--protocol", sw_opt.protocol, "protocol name")->required();
    sw->add_option("--n", sw_opt.n_list, "comma-separated vertex counts")->required();
    sw->add_option("--m", sw_opt.m_list, "comma-separated edge counts, same length as --n")
        ->required();
    sw->add_option("--s", sw_opt.s_list, "comma-separated player counts");
    sw->add_option("--k", sw_opt.k_list, "comma-separated stretch parameters");
    sw->add_option("--seeds", sw_opt.seeds, "seeds per grid point");
    sw->add_option("--seed-base", sw_opt.seed_base, "first seed value");
    sw->add_option("--mode", sw_opt.mode, "partition mode");
    sw->add_option("--jobs", sw_opt.jobs, "parallel workers over grid points");
    sw->add_option("--verify-cap", sw_opt.verify_cap, "skip verification above this n");
    sw->add_option("--c-sample", sw_opt.c_sample, "sample-count multiplier");
    sw->add_option("--c-sample2", sw_opt.c_sample2, "multiplier for additive-k's O(k) term");
    sw->add_option("--delta", sw_opt.delta, "coverage failure target (default 1/n)");
    sw->add_flag("--free-randomness", sw_opt.free_randomness,
                 "do not charge the sampling broadcasts");
    sw->add_option("-o,--out", sw_opt.out, "output CSV file");

    // ---- fit ----
    struct {
        std::string input, variable = "s", out;
    } f_opt;
    auto* fit = app.add_subcommand("fit", "log-log slope of total_bits in a sweep CSV");
    fit->add_option("--input", f_opt.input, "sweep CSV file")->required();
    fit->add_option("--variable", f_opt.variable, "n or s");
    fit->add_option("-o,--out", f_opt.out, "output JSON-lines file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        if (gen_proj->parsed()) {
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_graph(sink.stream(), projective_incidence(g_opt.q));
        } else if (gen_bireg->parsed()) {
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_graph(sink.stream(), biregular_girth6(g_opt.q, g_opt.split));
        } else if (gen_hard->parsed()) {
            HardInstance inst = hard_instance_mult3(g_opt.q, g_opt.s);
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_graph(sink.stream(), inst.graph);
            if (!g_opt.partition_out.empty())
                save_partition(g_opt.partition_out, inst.partition, inst.graph.n(), echo);
        } else if (gen_gnm->parsed()) {
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_graph(sink.stream(), random_gnm(g_opt.n, g_opt.m, g_opt.seed));
        } else if (gen_kab->parsed()) {
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_graph(sink.stream(), complete_bipartite(g_opt.a, g_opt.b));
        } else if (gen_part->parsed()) {
            Graph g = load_graph(g_opt.graph_in);
            EdgePartition p =
                partition_edges(g, g_opt.s, partition_mode_from_string(g_opt.mode), g_opt.seed);
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_partition(sink.stream(), p, g.n());
        } else if (gen_stream->parsed()) {
            Graph g = load_graph(g_opt.graph_in);
            Sink sink(g_opt.out);
            sink.stream() << echo;
            write_stream(sink.stream(), make_churn_stream(g, g_opt.churn, g_opt.seed));
        }
        return 0;
    }

    if (run->parsed()) {
        ProtocolName proto = protocol_from_string(run->get_subcommands().front()->get_name());
        Graph g = load_graph(r_opt.graph);
        EdgePartition part = load_partition(r_opt.partition);
        ProtocolParams params;
        params.k = r_opt.k;
        params.c_sample = r_opt.c_sample;
        params.c_sample2 = r_opt.c_sample2;
        params.delta = r_opt.delta;
        params.free_randomness = r_opt.free_randomness;
        SpannerResult result = run_protocol(proto, g, part, r_opt.seed, params);

        SweepRow row;
        row.protocol = to_string(proto);
        row.n = g.n();
        row.m = static_cast<int64_t>(g.m());
        row.s = part.player_count;
        row.k = r_opt.k;
        row.seed = r_opt.seed;
        row.bits_up = result.transcript.bits_up();
        row.bits_down = result.transcript.bits_down();
        row.total_bits = result.transcript.total_bits();
        row.rounds = result.transcript.rounds;
        row.messages = result.transcript.messages;
        row.spanner_edges = result.spanner.m();
        if (r_opt.verify && g.n() <= r_opt.verify_cap) {
            bool mult = false;
            int stretch = verification_stretch(proto, r_opt.k, &mult);
            row.verified = (mult ? verify_multiplicative(g, result.spanner, stretch)
                                 : verify_additive(g, result.spanner, stretch))
                               ? 1
                               : 0;
        }
        if (!r_opt.out_spanner.empty()) save_graph(r_opt.out_spanner, result.spanner, echo);
        Sink sink(r_opt.out);
        sink.stream() << echo;
        write_csv(sink.stream(), {row});
        return row.verified == 0 ? 1 : 0;
    }

    if (srun->parsed()) {
        TurnstileStream stream = load_stream(sr_opt.stream);
        StreamResult result = stream_spanner(stream, sr_opt.k, sr_opt.seed);
        int verified = -1;
        if (sr_opt.verify && stream.n <= sr_opt.verify_cap) {
            Graph g = net_graph(stream);
            verified = verify_multiplicative(g, result.spanner, 2 * sr_opt.k - 1) ? 1 : 0;
        }
        if (!sr_opt.out_graph.empty()) save_graph(sr_opt.out_graph, result.spanner, echo);
        Sink sink(sr_opt.out);
        sink.stream() << echo;
        sink.stream() << "protocol,n,updates,k,seed,passes,sampler_count,words_used,"
                         "words_formula,spanner_edges,verified\n";
        sink.stream() << "stream-spanner," << stream.n << ',' << stream.updates.size() << ','
                      << sr_opt.k << ',' << sr_opt.seed << ',' << result.passes << ','
                      << result.sampler_count << ',' << result.words_used << ','
                      << result.words_formula << ',' << result.spanner.m() << ',';
        if (verified < 0)
            sink.stream() << "unchecked";
        else
            sink.stream() << verified;
        sink.stream() << '\n';
        if (sr_opt.passes_check && result.passes != sr_opt.k / 2 + 1) {
            std::cerr << "pass count " << result.passes << " != " << sr_opt.k / 2 + 1 << '\n';
            return 1;
        }
        return verified == 0 ? 1 : 0;
    }

    if (verify->parsed()) {
        Graph g = load_graph(v_opt.graph);
        Graph h = load_graph(v_opt.spanner);
        bool ok;
        if (va->count() > 0)
            ok = verify_additive(g, h, v_opt.add);
        else if (vm->count() > 0)
            ok = verify_multiplicative(g, h, v_opt.mult);
        else
            throw CLI::ValidationError("verify", "one of --mult or --add is required");
        std::cout << (ok ? "verified" : "FAILED") << '\n';
        return ok ? 0 : 1;
    }

    if (sw->parsed()) {
        SweepGrid grid;
        auto ns = parse_int_list(sw_opt.n_list);
        auto ms = parse_int_list(sw_opt.m_list);
        if (ns.size() != ms.size())
            throw CLI::ValidationError("sweep", "--n and --m must have the same length");
        for (size_t i = 0; i < ns.size(); ++i)
            grid.sizes.emplace_back(static_cast<int>(ns[i]), ms[i]);
        for (int64_t s : parse_int_list(sw_opt.s_list))
            grid.player_counts.push_back(static_cast<int>(s));
        for (int64_t k : parse_int_list(sw_opt.k_list)) grid.ks.push_back(static_cast<int>(k));
        for (int i = 0; i < sw_opt.seeds; ++i)
            grid.seeds.push_back(sw_opt.seed_base + static_cast<uint64_t>(i));
        grid.mode = partition_mode_from_string(sw_opt.mode);
        ProtocolParams params;
        params.c_sample = sw_opt.c_sample;
        params.c_sample2 = sw_opt.c_sample2;
        params.delta = sw_opt.delta;
        params.free_randomness = sw_opt.free_randomness;
        std::vector<SweepRow> rows = sweep(protocol_from_string(sw_opt.protocol), grid, params,
                                           sw_opt.verify_cap, sw_opt.jobs);
        Sink sink(sw_opt.out);
        sink.stream() << echo;
        write_csv(sink.stream(), rows);
        return 0;
    }

    if (fit->parsed()) {
        std::ifstream in(f_opt.input);
        if (!in) throw std::runtime_error("cannot open CSV file: " + f_opt.input);
        FitResult res = fit_exponent(read_csv(in), f_opt.variable);
        char line[256];
        std::snprintf(line, sizeof line,
                      "{\"variable\":\"%s\",\"slope\":%.12g,\"intercept\":%.12g,\"r2\":%.12g,"
                      "\"points\":%zu}",
                      f_opt.variable.c_str(), res.slope, res.intercept, res.r2, res.points);
        Sink sink(f_opt.out);
        sink.stream() << echo << line << '\n';
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_command(argc, argv);
    } catch (const CLI::Error&) {
        return 2;  // usage errors already printed by CLI11_PARSE
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
