// Compares the parallel pair-scan kernels against their serial reference
// implementations. With a single hardware thread the honest answer is a
// ratio near 1.
//
// Usage: bench_kernels [n_points] [n_segments] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxiskel/segments.hpp"
#include "proxiskel/skeleton.hpp"

using namespace proxiskel;

namespace {

template <class F>
double time_best(F&& body, int reps) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock::now();
        body();
        double t = std::chrono::duration<double>(clock::now() - t0).count();
        if (t < best) best = t;
    }
    return best;
}

std::vector<Point2> random_points(unsigned seed, int n) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(n);
    for (Point2& p : pts) p = {u(rng), u(rng)};
    return pts;
}

std::vector<Segment> grid_segments(int per_side) {
    // Disjoint by construction: short horizontal dashes on a coarse grid.
    std::vector<Segment> segs;
    for (int i = 0; i < per_side; ++i)
        for (int j = 0; j < per_side; ++j)
            segs.push_back({{2.0 * i, 2.0 * j}, {2.0 * i + 1.0, 2.0 * j}});
    return segs;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 1200;
    int seg_side = argc > 2 ? std::atoi(argv[2]) : 5;
    unsigned seed = argc > 3 ? static_cast<unsigned>(std::atoi(argv[3])) : 7;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads=%d\n", threads);
    std::printf("kernel,n,parallel_s,serial_s,speedup\n");

    {
        std::vector<Point2> pts = random_points(seed, n);
        EdgeList par, ser;
        double tp = time_best(
            [&] { par = beta_skeleton_brute(pts, MetricSpec::l2(), Beta(1.0), Variant::Closed); },
            3);
        double ts = time_best(
            [&] {
                ser = beta_skeleton_brute_serial(pts, MetricSpec::l2(), Beta(1.0),
                                                 Variant::Closed);
            },
            3);
        if (par != ser) {
            std::fprintf(stderr, "kernel mismatch: point skeleton\n");
            return 1;
        }
        std::printf("point_brute,%d,%.6f,%.6f,%.3f\n", n, tp, ts, ts / tp);
    }

    {
        std::vector<Segment> segs = grid_segments(seg_side);
        int m = 24;
        SegmentSkeleton par, ser;
        double tp = time_best(
            [&] { par = segment_beta_skeleton(segs, Beta(1.0), Variant::Closed, m); }, 3);
        double ts = time_best(
            [&] { ser = segment_beta_skeleton_serial(segs, Beta(1.0), Variant::Closed, m); }, 3);
        if (par.edges != ser.edges) {
            std::fprintf(stderr, "kernel mismatch: segment skeleton\n");
            return 1;
        }
        std::printf("segment_grid,%d,%.6f,%.6f,%.3f\n",
                    static_cast<int>(segs.size()), tp, ts, ts / tp);
    }

    return 0;
}
