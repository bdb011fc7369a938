// Microbenchmark comparing the serial reduction against the chunked
// OpenMP reduction on assembly-sized workloads. Not part of the test
// suite; build target `bench_kernels`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vnls/reduce.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_best_of(int reps, F&& fn, double& sink) {
    double best = 1e300;
    for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = clock_type::now();
        sink += fn();
        const double dt = std::chrono::duration<double>(clock_type::now() - t0).count();
        best = std::min(best, dt);
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif

    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> unif(0.1, 2.0);

    for (std::size_t n : {std::size_t(100000), std::size_t(1000000), std::size_t(8000000)}) {
        std::vector<double> r(n), u(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = unif(rng);
            u[i] = unif(rng);
            w[i] = unif(rng);
        }
        // Integrand shaped like the quadratic-form assembly hot loop.
        auto term = [&](std::size_t i) {
            const double du = u[i] - 0.5 * u[i > 0 ? i - 1 : 0];
            return w[i] * (du * du + u[i] * u[i] / (r[i] * r[i]));
        };
        double sink = 0.0;
        const double t_serial =
            time_best_of(5, [&] { return vnls::serial_sum(n, term); }, sink);
        const double t_chunked =
            time_best_of(5, [&] { return vnls::chunked_sum(n, term); }, sink);
        const double a = vnls::serial_sum(n, term);
        const double b = vnls::chunked_sum(n, term);
        std::printf("n=%9zu  serial %8.3f ms  chunked %8.3f ms  speedup %5.2fx  "
                    "bitwise_equal=%s\n",
                    n, 1e3 * t_serial, 1e3 * t_chunked, t_serial / t_chunked,
                    a == b ? "yes" : "no");
        if (sink == 12345.678) std::printf("~\n"); // keep the sink live
    }
    return 0;
}
