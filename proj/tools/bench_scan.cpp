// Timing harness: threaded flux scan vs the serial reference implementation.
// Prints wall times and the largest discrepancy between the two; no pass/fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fluxladder/groundstate.hpp"

using namespace fluxladder;
using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int main(int argc, char** argv) {
    const int N = argc > 1 ? std::atoi(argv[1]) : 40;
    const int points = argc > 2 ? std::atoi(argv[2]) : 48;
    const double pi = 3.14159265358979323846;

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = (i + 1) * pi / (points + 1);

    const LadderSpec spec = LadderSpec::uniform(N, Boundary::Periodic);

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both runs are serial\n");
#endif
    std::printf("scan: N = %d, %d flux points, single excitation\n", N, points);

    auto t0 = clock_type::now();
    const auto serial = chiral_current_scan_serial(spec, 1.0, grid, 1);
    const double ts = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = chiral_current_scan(spec, 1.0, grid, 1);
    const double tp = seconds_since(t0);

    double max_dev = 0.0;
    for (int i = 0; i < points; ++i)
        max_dev = std::max(max_dev, std::fabs(serial[i].jc - parallel[i].jc));

    std::printf("serial reference : %8.3f s\n", ts);
    std::printf("threaded scan    : %8.3f s\n", tp);
    std::printf("max |jc| mismatch: %.3e\n", max_dev);
    return 0;
}
