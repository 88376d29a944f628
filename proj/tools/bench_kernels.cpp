// bench_kernels - compares the serial reference kernels against the
// OpenMP-parallel ones (all-pairs BFS and girth) on G(n,m) inputs and prints
// a speedup table. The verification oracle dominates sweep wall time, so
// this is the loop worth measuring.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "spanner/distances.hpp"
#include "spanner/generators.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace spanner;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::atoi(argv[1]) : 2048;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%8s %10s %12s %12s %8s %12s %12s %8s\n", "n", "m", "apsp_ser", "apsp_par",
                "speedup", "girth_ser", "girth_par", "speedup");
    for (int n = 256; n <= max_n; n *= 2) {
        int64_t m = std::min<int64_t>(16 * n, edge_space(n));
        Graph g = random_gnm(n, m, 7);

        auto t0 = Clock::now();
        DistanceMatrix serial = all_pairs_distances_serial(g);
        double apsp_ser = seconds_since(t0);
        t0 = Clock::now();
        DistanceMatrix parallel = all_pairs_distances(g);
        double apsp_par = seconds_since(t0);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                if (serial.at(u, v) != parallel.at(u, v)) {
                    std::fprintf(stderr, "kernel mismatch at (%d,%d)\n", u, v);
                    return 1;
                }

        t0 = Clock::now();
        auto girth_ser_val = girth_serial(g);
        double girth_ser = seconds_since(t0);
        t0 = Clock::now();
        auto girth_par_val = girth(g);
        double girth_par = seconds_since(t0);
        if (girth_ser_val != girth_par_val) {
            std::fprintf(stderr, "girth mismatch\n");
            return 1;
        }

        std::printf("%8d %10lld %12.4f %12.4f %7.2fx %12.4f %12.4f %7.2fx\n", n,
                    static_cast<long long>(m), apsp_ser, apsp_par, apsp_ser / apsp_par,
                    girth_ser, girth_par, girth_ser / girth_par);
    }
    return 0;
}
