#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigkit/errors.hpp"
#include "rigkit/threshold.hpp"
#include "rigkit/witness.hpp"

namespace rigkit {

// e^{-lambda} lambda^k / k!, via log-gamma.
double poisson_pmf(double lambda, std::int64_t k);

// Poisson pmf truncated where the remaining tail mass drops below tail_eps
// (and at least min_len entries). The dropped mass is returned, never folded
// in silently.
struct PoissonTable {
    std::vector<double> pmf;
    double tail = 0.0;
};
PoissonTable poisson_pmf_table(double lambda, double tail_eps = 1e-12, std::size_t min_len = 1);

// Plain half-L1 between two pmfs over the nonnegative integers.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

// TV between an empirical pmf and Poisson(lambda). The Poisson side is
// truncated past the empirical support once its tail is below tail_eps; the
// tail beyond the table contributes exactly tail/2, reported separately and
// included in the value.
struct TvResult {
    double value = 0.0;
    double truncation = 0.0;
};
TvResult tv_to_poisson(const std::vector<double>& empirical, double lambda,
                       double tail_eps = 1e-12);

struct BootstrapCI {
    double level = 0.95;
    double lower = 0.0;
    double upper = 0.0;
};

// Percentile bootstrap for the empirical-TV statistic: resample R counts
// from the histogram, recompute TV against Poisson(lambda).
BootstrapCI bootstrap_tv_ci(const std::vector<std::uint64_t>& histogram, double lambda,
                            int resamples, double level, SeedSpec seed, int threads = 0);

struct DistributionSummary {
    std::int64_t n = 0;
    std::uint64_t replicates = 0;
    double lambda0 = 0.0;
    double p = 0.0;
    double m_real = 0.0;
    std::vector<std::uint64_t> histogram;
    std::vector<double> pmf;
    TvResult tv;
    // Upward bias scale of the empirical-TV estimator, ~0.5 sum_k
    // sqrt(p_k (1-p_k)/R). Reported alongside the estimate, never subtracted.
    double tv_bias_scale = 0.0;
    BootstrapCI ci;
    double mean = 0.0;
    double variance = 0.0;
    double y0_mean = 0.0;
    double y1_mean = 0.0;
    std::uint64_t y1_positive = 0;  // replicates with Y1 > 0
};

struct ReplicateRow {
    std::int64_t n = 0;
    std::uint64_t replicate = 0;
    CoverCounts counts;
};

struct ExperimentConfig {
    Rational alpha;
    double c = 1.0;
    std::vector<std::int64_t> n_grid;
    std::uint64_t replicates = 100;
    std::uint64_t master_seed = 0;
    std::optional<double> p_override;
    int bootstrap_resamples = 1000;
    double ci_level = 0.95;
    int threads = 0;
    bool force = false;           // run outside the mp^2 -> 0 regime
    bool keep_replicates = false; // collect per-replicate rows
};

struct ExperimentResult {
    Rational eta0;
    double lambda0 = 0.0;
    std::vector<DistributionSummary> per_n;
    std::vector<ReplicateRow> rows;  // when keep_replicates
};

// Monte Carlo validation harness: for each n sample R replicates of
// G(n, m, p) at p = c n^{-eta0}, count induced copies with the Y0/Y1 split,
// and compare the empirical law against Poisson(lambda0). Replicates use
// independent per-replicate streams and run in parallel; results do not
// depend on the thread count.
ExperimentResult run_experiment(const PatternGraph& g, const ExperimentConfig& config);

}  // namespace rigkit
