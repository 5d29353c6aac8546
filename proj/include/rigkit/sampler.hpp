#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rigkit/host_graph.hpp"

namespace rigkit {

// Deterministic per-replicate stream: the engine state is a pure function of
// (master seed, replicate index, lane), so replicates can run in any order on
// any number of threads and reproduce bit-identically. mt19937_64 is pinned
// by the standard; uniform doubles are generated manually for the same reason.
struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t replicate = 0;

    std::mt19937_64 stream(std::uint64_t lane = 0) const;
};

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// One draw of the n x m vertex-object incidence structure: chooser_sets[w]
// lists the vertices that selected object w, ascending.
struct IncidenceSample {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double p = 0.0;
    SeedSpec seed;
    std::vector<std::vector<std::uint32_t>> chooser_sets;

    std::int64_t total_incidences() const;
};

// Each of the n*m incidences is an independent Bernoulli(p) draw. Below
// sparse_threshold the chooser set is drawn by geometric skips, which is
// equivalent in distribution and far faster at threshold-scale p.
IncidenceSample sample_incidence(std::int64_t n, std::int64_t m, double p, SeedSpec seed,
                                 double sparse_threshold = 0.01);

// Reference implementation: always row-by-row Bernoulli. Kept for
// distribution tests against the skip-sampling path.
IncidenceSample sample_incidence_naive(std::int64_t n, std::int64_t m, double p, SeedSpec seed);

// Union of the cliques induced by the chooser sets.
HostGraph project_graph(const IncidenceSample& sample);

// Erdos-Renyi comparison sampler: each of the C(n,2) edges independently
// with probability p_hat.
HostGraph sample_gnp(std::int64_t n, double p_hat, SeedSpec seed);

enum class PHatMode { Paper, Exact };  // mp^2 vs 1 - (1 - p^2)^m

// Matched edge probability for the G(n, p_hat) comparison. Paper mode clamps
// mp^2 at 1 (with the clamp reported via the return flag variant below).
double p_hat(std::int64_t m, double p, PHatMode mode, bool* clamped = nullptr);

}  // namespace rigkit
