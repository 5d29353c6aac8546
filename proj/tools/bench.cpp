// Benchmark: OpenMP kernels against their serial references.
//   1. induced-copy counting in a sampled host graph
//   2. Monte Carlo replicate throughput (sample + project + witness)

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "rigkit/embed.hpp"
#include "rigkit/stats.hpp"

using namespace rigkit;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void bench_counting() {
    std::int64_t n = 1500;
    HostGraph host = sample_gnp(n, 0.02, SeedSpec{7, 0});
    std::printf("count_induced_copies: host n=%lld, %lld edges\n",
                static_cast<long long>(n), static_cast<long long>(host.edge_count()));
    for (const auto& [name, pattern] : {std::pair<const char*, PatternGraph>{"K3", make_complete(3)},
                                        {"C4", make_cycle(4)},
                                        {"P4", make_path(4)}}) {
        double t0 = now();
        std::uint64_t serial = count_induced_copies_serial(host, pattern);
        double t1 = now();
        std::uint64_t parallel = count_induced_copies(host, pattern, max_threads());
        double t2 = now();
        std::printf("  %-3s count=%-12llu serial %8.1f ms | omp(%d) %8.1f ms | speedup %.2fx\n",
                    name, static_cast<unsigned long long>(serial), (t1 - t0) * 1e3, max_threads(),
                    (t2 - t1) * 1e3, (t1 - t0) / (t2 - t1));
        if (serial != parallel) std::printf("  MISMATCH serial=%llu parallel=%llu\n",
                                            static_cast<unsigned long long>(serial),
                                            static_cast<unsigned long long>(parallel));
    }
}

void bench_replicates() {
    PatternGraph c4 = make_cycle(4);
    std::printf("run_experiment: C4, alpha=1, c=1, n=300\n");
    for (int threads : {1, max_threads()}) {
        ExperimentConfig config;
        config.alpha = Rational(1);
        config.c = 1.0;
        config.n_grid = {300};
        config.replicates = 2000;
        config.master_seed = 7;
        config.bootstrap_resamples = 200;
        config.threads = threads;
        double t0 = now();
        ExperimentResult result = run_experiment(c4, config);
        double t1 = now();
        std::printf("  threads=%d: %.1f ms (mean X = %.4f)\n", threads, (t1 - t0) * 1e3,
                    result.per_n[0].mean);
    }
}

}  // namespace

int main() {
    bench_counting();
    bench_replicates();
    return 0;
}
