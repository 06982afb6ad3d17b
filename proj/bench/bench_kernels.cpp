// Compares the OpenMP imaging-grid kernel against the serial reference, and
// a parallel phase-transition sweep against a single-worker run. Results must
// match exactly; the interesting number is the speedup.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "hankelsr/experiments.hpp"
#include "hankelsr/music.hpp"
#include "hankelsr/signal.hpp"

using namespace hankelsr;
namespace ex = hankelsr::experiments;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("threads available: %d\n", max_threads);

    // Imaging grid: J over 2^16 points for an N=64, R=8 instance.
    {
        const SpectralSignal sig = random_instance(1, 64, 8, 1e-3);
        const CVec x = synthesize(sig);
        const CMat u2 = noise_subspace(x, 8, 64);
        const int grid = 1 << 16;

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = imaging_grid_serial(u2, grid);
        const double ts = seconds(t0);

        t0 = std::chrono::steady_clock::now();
        const auto parallel = imaging_grid(u2, grid);
        const double tp = seconds(t0);

        bool identical = serial.size() == parallel.size();
        for (std::size_t i = 0; identical && i < serial.size(); ++i)
            identical = serial[i] == parallel[i];
        std::printf(
            "imaging grid %d pts: serial %.3fs, parallel %.3fs, speedup %.2fx, "
            "identical=%s\n",
            grid, ts, tp, ts / tp, identical ? "yes" : "NO");
    }

    // Phase sweep: small grid, one worker vs all workers.
    {
        ex::PhaseConfig cfg;
        cfg.n = 16;
        cfg.m_values = {12, 18, 24};
        cfg.r_values = {1, 2, 3, 4};
        cfg.trials = 8;
        cfg.seed = 5;
        cfg.solver_options.max_iters = 1500;
        cfg.solver_options.tolerance = 1e-6;

        cfg.workers = 1;
        auto t0 = std::chrono::steady_clock::now();
        const auto one = ex::run_phase(cfg);
        const double t1 = seconds(t0);

        cfg.workers = max_threads;
        t0 = std::chrono::steady_clock::now();
        const auto many = ex::run_phase(cfg);
        const double tm = seconds(t0);

        std::printf(
            "phase sweep %zu cells x %d trials: 1 worker %.2fs, %d workers "
            "%.2fs, speedup %.2fx, identical=%s\n",
            cfg.m_values.size() * cfg.r_values.size(), cfg.trials, t1,
            cfg.workers, tm, t1 / tm,
            one.success_counts == many.success_counts ? "yes" : "NO");
    }
    return 0;
}
