// Compares the OpenMP kernels against their serial reference on the three
// hot loops: decoupling Monte-Carlo sampling, a verify-suite batch, and the
// multistart norm evaluator.

#include "svv/parallel.hpp"
#include "svv/pqnorm.hpp"
#include "svv/rng.hpp"
#include "svv/verify.hpp"

#include <chrono>
#include <cstdio>

using namespace svv;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
        .count();
}

template <typename F>
double timed(F&& f) {
    const double t0 = now_ms();
    f();
    return now_ms() - t0;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", resolve_threads(0));

    {
        ExperimentConfig cfg;
        cfg.trials = 1;
        cfg.mcSamples = 800;
        const DensityMatrix rho = random_density(16, 16, 4242);
        const BipartiteOp rho_xy(rho.mat(), 4, 4);
        ExperimentConfig serial_cfg = cfg;
        serial_cfg.threads = 1;
        double s = timed([&] { decoupling_mc(rho_xy, 2, 2.0, cfg.mcSamples, Seed(7), serial_cfg); });
        double p = timed([&] { decoupling_mc(rho_xy, 2, 2.0, cfg.mcSamples, Seed(7), cfg); });
        report("decoupling MC (800 samples)", s, p);
    }

    {
        ExperimentConfig cfg;
        cfg.trials = 8;
        cfg.dims = {{2, 2, 0}};
        cfg.alphas = {1.5, 2.0};
        cfg.tol = 1e-6;
        cfg.restarts = 4;
        double s = timed([&] { run_suite_serial("monotone-alpha", cfg); });
        double p = timed([&] { run_suite("monotone-alpha", cfg); });
        report("monotone suite (8 trials)", s, p);
    }

    {
        const DensityMatrix rho = random_density(16, 16, 99);
        const BipartiteOp m(rho.mat(), 4, 4);
        PQQuery q;
        q.q = SchattenOrder::finite(2.0);
        q.restarts = 8;
        PQQuery qs = q;
        qs.threads = 1;
        PQQuery qp = q;
        qp.threads = resolve_threads(0);
        double s = timed([&] { pq_norm_inf_positive(m, qs); });
        double p = timed([&] { pq_norm_inf_positive(m, qp); });
        report("(1,2)-norm, 8 restarts", s, p);
    }
    return 0;
}
