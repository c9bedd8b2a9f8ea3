// Parallel vs serial kernels and CG solve on random sparse quote graphs.
// Usage: voltfx_bench [max_nodes]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "oracles.hpp"
#include "voltfx/fit.hpp"
#include "voltfx/kernels.hpp"

using namespace voltfx;

namespace {

template <class F>
double best_of(int reps, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv)
{
    const std::size_t max_nodes = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200'000;
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%10s %12s %12s %12s %12s %12s %10s\n", "nodes", "spmv_par", "spmv_ser", "cg_par", "cg_ser",
                "dense", "iters");

    std::mt19937_64 rng(1);
    std::normal_distribution<double> lr(0.0, 1.0);
    for (std::size_t n = 256; n <= max_nodes; n *= 4) {
        const auto g = oracle::random_connected_graph(rng, n, 3 * n, lr);
        const auto sys = assemble_normal_equations(g, 0);
        std::vector<double> y(sys.rhs.size());

        const double spmv_par = best_of(20, [&] { kernels::spmv(sys.laplacian, sys.rhs, y); });
        const double spmv_ser = best_of(20, [&] { kernels::serial::spmv(sys.laplacian, sys.rhs, y); });

        FitOptions par, ser;
        par.execution = kernels::Execution::Parallel;
        ser.execution = kernels::Execution::Serial;
        std::size_t iters = 0;
        const double cg_par = best_of(3, [&] { iters = fit_potentials(g, g.nodes()[0], par).solver_iterations; });
        const double cg_ser = best_of(3, [&] { fit_potentials(g, g.nodes()[0], ser); });
        const double dense = n <= 1024 ? best_of(3, [&] { reference::fit_potentials_dense(g, g.nodes()[0]); }) : -1.0;

        char dense_text[32] = "skipped";
        if (dense >= 0.0) {
            std::snprintf(dense_text, sizeof dense_text, "%.6f", dense);
        }
        std::printf("%10zu %12.6f %12.6f %12.6f %12.6f %12s %10zu\n", n, spmv_par, spmv_ser, cg_par, cg_ser, dense_text,
                    iters);
    }
}
