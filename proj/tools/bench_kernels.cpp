// Compares the parallel kernels against their serial reference
// implementations: orbit counting, lattice-word properness filtering, and the
// free-region scan.

#include <chrono>
#include <cstdio>

#include "nets/enumeration.hpp"
#include "nets/freespace.hpp"
#include "nets/orbits.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nets;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void bench_orbits(int n) {
    auto t0 = Clock::now();
    uint64_t serial = count_orbits(n, GridGroup::ShiftRotations48);
    double ts = elapsed(t0);

    t0 = Clock::now();
    uint64_t parallel = count_orbits_minimage(n, GridGroup::ShiftRotations48);
    double tp = elapsed(t0);

    printf("orbits n=%d          serial bfs %8.3fs   parallel min-image %8.3fs   %s (count %llu)\n", n, ts,
           tp, serial == parallel ? "agree" : "DISAGREE", (unsigned long long)serial);
}

void bench_words() {
    auto t0 = Clock::now();
    int proper_serial = 0;
    for (int m = 1; m < (1 << EdgeAlphabet::size); ++m)
        if (is_proper(ModelNet::lattice_net(EdgeWord{(uint16_t)m}.directions())).proper) ++proper_serial;
    double ts = elapsed(t0);

    t0 = Clock::now();
    auto infos = enumerate_lattice_words();
    int proper_parallel = 0;
    for (const auto& info : infos) proper_parallel += info.proper;
    double tp = elapsed(t0);

    printf("lattice words        serial     %8.3fs   parallel           %8.3fs   %s (%d proper)\n", ts, tp,
           proper_serial == proper_parallel ? "agree" : "DISAGREE", proper_serial);
}

void bench_freespace(int resolution) {
    std::vector<DirectedLabeledEdge> edges = {
        {0, 0, {0, 0, 1}}, {1, 1, {1, 0, 0}}, {0, 1, {0, 0, 0}}, {0, 1, {0, 1, 0}},
    };
    LabeledQuotientGraph g(2, edges);
    std::map<VertexId, Rat3> fixed{{0, Rat3{Rat(1, 2), Rat(1, 2), Rat(1, 2)}}};

    auto t0 = Clock::now();
    auto serial = scan_free_region_serial(g, fixed, 1, resolution);
    double ts = elapsed(t0);

    t0 = Clock::now();
    auto parallel = scan_free_region(g, fixed, 1, resolution);
    double tp = elapsed(t0);

    bool agree = serial.admissible == parallel.admissible &&
                 serial.component_count == parallel.component_count;
    printf("free region R=%-3d    serial rat %8.3fs   parallel scaled    %8.3fs   %s (%d components)\n",
           resolution, ts, tp, agree ? "agree" : "DISAGREE", parallel.component_count);
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--threads") threads = std::atoi(argv[i + 1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    printf("threads: %d\n", threads > 0 ? threads : omp_get_max_threads());
#else
    printf("threads: 1 (built without OpenMP)\n");
#endif

    bench_orbits(4);
    bench_orbits(5);
    bench_words();
    bench_freespace(12);
    bench_freespace(16);
    return 0;
}
