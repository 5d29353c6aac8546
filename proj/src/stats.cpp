#include "rigkit/stats.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rigkit {

double poisson_pmf(double lambda, std::int64_t k) {
    if (lambda < 0 || k < 0) throw std::invalid_argument("poisson_pmf: bad arguments");
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    double lk = static_cast<double>(k);
    return std::exp(lk * std::log(lambda) - lambda - std::lgamma(lk + 1.0));
}

PoissonTable poisson_pmf_table(double lambda, double tail_eps, std::size_t min_len) {
    PoissonTable table;
    double cumulative = 0.0;
    std::size_t k = 0;
    while (k < min_len || 1.0 - cumulative >= tail_eps) {
        double mass = poisson_pmf(lambda, static_cast<std::int64_t>(k));
        table.pmf.push_back(mass);
        cumulative += mass;
        ++k;
        if (k > min_len + 64 && mass == 0.0) break;  // underflow guard
    }
    table.tail = std::max(0.0, 1.0 - cumulative);
    return table;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < len; ++k) {
        double x = k < a.size() ? a[k] : 0.0;
        double y = k < b.size() ? b[k] : 0.0;
        total += std::abs(x - y);
    }
    return 0.5 * total;
}

TvResult tv_to_poisson(const std::vector<double>& empirical, double lambda, double tail_eps) {
    PoissonTable table = poisson_pmf_table(lambda, tail_eps, empirical.size());
    TvResult out;
    out.value = tv_distance(empirical, table.pmf);
    out.truncation = 0.5 * table.tail;
    out.value += out.truncation;  // empirical mass beyond the table is zero
    return out;
}

namespace {

std::vector<double> normalize(const std::vector<std::uint64_t>& histogram, std::uint64_t total) {
    std::vector<double> pmf(histogram.size());
    for (std::size_t k = 0; k < histogram.size(); ++k)
        pmf[k] = static_cast<double>(histogram[k]) / static_cast<double>(total);
    return pmf;
}

}  // namespace

BootstrapCI bootstrap_tv_ci(const std::vector<std::uint64_t>& histogram, double lambda,
                            int resamples, double level, SeedSpec seed, int threads) {
    std::uint64_t total = 0;
    for (std::uint64_t c : histogram) total += c;
    if (total == 0) throw std::invalid_argument("bootstrap: empty histogram");
    std::vector<std::uint64_t> cumulative(histogram.size());
    std::uint64_t running = 0;
    for (std::size_t k = 0; k < histogram.size(); ++k) {
        running += histogram[k];
        cumulative[k] = running;
    }
    std::vector<double> tvs(static_cast<std::size_t>(resamples));
#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    if (threads <= 0) threads = max_threads;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
    for (int b = 0; b < resamples; ++b) {
        SeedSpec bs{seed.master, seed.replicate};
        std::mt19937_64 gen = bs.stream(0x0b00u + static_cast<std::uint64_t>(b));
        std::vector<std::uint64_t> resampled(histogram.size(), 0);
        for (std::uint64_t i = 0; i < total; ++i) {
            std::uint64_t u = gen() % total;
            std::size_t k =
                static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                         cumulative.begin());
            ++resampled[k];
        }
        tvs[static_cast<std::size_t>(b)] = tv_to_poisson(normalize(resampled, total), lambda).value;
    }
    std::sort(tvs.begin(), tvs.end());
    double alpha_half = (1.0 - level) / 2.0;
    auto pick = [&](double q) {
        double idx = q * static_cast<double>(resamples - 1);
        return tvs[static_cast<std::size_t>(std::llround(idx))];
    };
    BootstrapCI ci;
    ci.level = level;
    ci.lower = pick(alpha_half);
    ci.upper = pick(1.0 - alpha_half);
    return ci;
}

namespace {

std::uint64_t mix_for_n(std::uint64_t master, std::int64_t n) {
    // Distinct grid points must consume distinct streams.
    std::uint64_t x = master ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(n + 1));
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return x;
}

}  // namespace

ExperimentResult run_experiment(const PatternGraph& g, const ExperimentConfig& config) {
    if (config.replicates < 1) throw std::invalid_argument("run_experiment: R >= 1 required");
    if (config.n_grid.empty()) throw std::invalid_argument("run_experiment: empty n grid");

    Eta0Result scan = eta0(g, config.alpha);
    RegimeDiagnostics regime = regime_from_eta0(scan.eta0, config.alpha);
    if (!regime.mp2_vanishes && !config.p_override && !config.force)
        throw RegimeError("mp^2 does not vanish at alpha = " + rational_to_string(config.alpha) +
                          " (eta0 = " + rational_to_string(scan.eta0) + "); pass force to run");

    ExperimentResult result;
    result.eta0 = scan.eta0;
    double lambda = 0.0;
    for (const auto& cover : scan.c0) lambda += std::pow(config.c, cover.sum_sizes());
    lambda /= static_cast<double>(automorphism_count(g));
    result.lambda0 = lambda;

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    int threads = config.threads > 0 ? std::min(config.threads, max_threads) : max_threads;

    for (std::int64_t n : config.n_grid) {
        ModelParams params = config.p_override
                                 ? ModelParams::with_explicit_p(n, config.alpha, *config.p_override)
                                 : ModelParams::from_threshold(n, config.alpha, config.c, scan.eta0);
        std::int64_t m = params.m_int64();
        std::uint64_t master_n = mix_for_n(config.master_seed, n);

        std::uint64_t R = config.replicates;
        std::vector<std::uint64_t> x_of(static_cast<std::size_t>(R));
        std::vector<std::uint64_t> y0_of(static_cast<std::size_t>(R));
        std::vector<CoverCounts> rows;
        if (config.keep_replicates) rows.resize(static_cast<std::size_t>(R));

#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(dynamic, 8)
#endif
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(R); ++r) {
            SeedSpec seed{master_n, static_cast<std::uint64_t>(r)};
            IncidenceSample sample = sample_incidence(n, m, params.p, seed);
            CoverCounts counts = per_cover_counts(sample, g, scan.c0);
            x_of[static_cast<std::size_t>(r)] = counts.x;
            y0_of[static_cast<std::size_t>(r)] = counts.y0;
            if (config.keep_replicates) rows[static_cast<std::size_t>(r)] = std::move(counts);
        }

        DistributionSummary summary;
        summary.n = n;
        summary.replicates = R;
        summary.lambda0 = lambda;
        summary.p = params.p;
        summary.m_real = params.m_real;
        std::uint64_t max_x = 0;
        for (std::uint64_t x : x_of) max_x = std::max(max_x, x);
        summary.histogram.assign(static_cast<std::size_t>(max_x) + 1, 0);
        double sum = 0.0, sum_sq = 0.0, y0_sum = 0.0, y1_sum = 0.0;
        for (std::size_t r = 0; r < R; ++r) {
            ++summary.histogram[static_cast<std::size_t>(x_of[r])];
            double x = static_cast<double>(x_of[r]);
            sum += x;
            sum_sq += x * x;
            double y0 = static_cast<double>(y0_of[r]);
            y0_sum += y0;
            y1_sum += x - y0;
            if (x_of[r] > y0_of[r]) ++summary.y1_positive;
        }
        summary.pmf = normalize(summary.histogram, R);
        for (double mass : summary.pmf)
            summary.tv_bias_scale +=
                0.5 * std::sqrt(mass * (1.0 - mass) / static_cast<double>(R));
        summary.mean = sum / static_cast<double>(R);
        summary.variance =
            R > 1 ? (sum_sq - sum * sum / static_cast<double>(R)) / static_cast<double>(R - 1) : 0.0;
        summary.y0_mean = y0_sum / static_cast<double>(R);
        summary.y1_mean = y1_sum / static_cast<double>(R);
        summary.tv = tv_to_poisson(summary.pmf, lambda);
        if (R > 1)
            summary.ci = bootstrap_tv_ci(summary.histogram, lambda, config.bootstrap_resamples,
                                         config.ci_level, SeedSpec{master_n, 0}, threads);
        else
            summary.ci = BootstrapCI{config.ci_level, summary.tv.value, summary.tv.value};
        result.per_n.push_back(std::move(summary));

        if (config.keep_replicates)
            for (std::size_t r = 0; r < R; ++r)
                result.rows.push_back(ReplicateRow{n, r, std::move(rows[r])});
    }
    return result;
}

}  // namespace rigkit
