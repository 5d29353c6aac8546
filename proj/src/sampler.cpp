#include "rigkit/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace rigkit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 SeedSpec::stream(std::uint64_t lane) const {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ (0x5851f42d4c957f2dull * (replicate + 1)));
    s = splitmix64(s ^ (0x14057b7ef767814full * (lane + 1)));
    return std::mt19937_64(s);
}

std::int64_t IncidenceSample::total_incidences() const {
    std::int64_t total = 0;
    for (const auto& set : chooser_sets) total += static_cast<std::int64_t>(set.size());
    return total;
}

IncidenceSample sample_incidence(std::int64_t n, std::int64_t m, double p, SeedSpec seed,
                                 double sparse_threshold) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_incidence: p must be in [0, 1]");
    if (n < 0 || m < 0) throw std::invalid_argument("sample_incidence: negative dimension");
    IncidenceSample out;
    out.n = n;
    out.m = m;
    out.p = p;
    out.seed = seed;
    out.chooser_sets.assign(static_cast<std::size_t>(m), {});
    if (p == 0.0 || n == 0) return out;
    std::mt19937_64 gen = seed.stream(0);
    if (p == 1.0) {
        for (auto& set : out.chooser_sets) {
            set.resize(static_cast<std::size_t>(n));
            for (std::int64_t v = 0; v < n; ++v) set[static_cast<std::size_t>(v)] =
                static_cast<std::uint32_t>(v);
        }
        return out;
    }
    if (p >= sparse_threshold) {
        for (auto& set : out.chooser_sets)
            for (std::int64_t v = 0; v < n; ++v)
                if (uniform01(gen) < p) set.push_back(static_cast<std::uint32_t>(v));
        return out;
    }
    // Geometric skips: the gap to the next selected vertex is
    // floor(log(1-U)/log(1-p)), identical in law to scanning Bernoulli trials.
    double log1mp = std::log1p(-p);
    for (auto& set : out.chooser_sets) {
        std::int64_t v = -1;
        while (true) {
            double u = uniform01(gen);
            double skip = std::floor(std::log1p(-u) / log1mp);
            if (skip >= static_cast<double>(n)) break;
            v += 1 + static_cast<std::int64_t>(skip);
            if (v >= n) break;
            set.push_back(static_cast<std::uint32_t>(v));
        }
    }
    return out;
}

IncidenceSample sample_incidence_naive(std::int64_t n, std::int64_t m, double p, SeedSpec seed) {
    return sample_incidence(n, m, p, seed, 0.0);
}

HostGraph project_graph(const IncidenceSample& sample) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (const auto& set : sample.chooser_sets)
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                edges.emplace_back(set[i], set[j]);
    return HostGraph::from_edges(sample.n, std::move(edges));
}

HostGraph sample_gnp(std::int64_t n, double p_hat, SeedSpec seed) {
    if (p_hat < 0.0 || p_hat > 1.0) throw std::invalid_argument("sample_gnp: p must be in [0, 1]");
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    if (n > 1 && p_hat > 0.0) {
        std::mt19937_64 gen = seed.stream(1);
        if (p_hat == 1.0) {
            for (std::int64_t u = 0; u < n; ++u)
                for (std::int64_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        } else {
            // Skip-sample over the linearized strict upper triangle.
            double log1mp = std::log1p(-p_hat);
            double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
            double pos = -1.0;
            while (true) {
                double u = uniform01(gen);
                pos += 1.0 + std::floor(std::log1p(-u) / log1mp);
                if (pos >= total) break;
                auto k = static_cast<std::int64_t>(pos);
                // invert k = u*n - u*(u+1)/2 + (v - u - 1)
                auto row = static_cast<std::int64_t>(
                    std::floor(n - 0.5 - std::sqrt((n - 0.5) * (n - 0.5) - 2.0 * static_cast<double>(k))));
                std::int64_t base = row * n - row * (row + 1) / 2;
                while (base > k) {
                    --row;
                    base = row * n - row * (row + 1) / 2;
                }
                while (row + 1 < n && (row + 1) * n - (row + 1) * (row + 2) / 2 <= k) {
                    ++row;
                    base = row * n - row * (row + 1) / 2;
                }
                std::int64_t col = row + 1 + (k - base);
                edges.emplace_back(row, col);
            }
        }
    }
    return HostGraph::from_edges(n, std::move(edges));
}

double p_hat(std::int64_t m, double p, PHatMode mode, bool* clamped) {
    if (clamped) *clamped = false;
    if (mode == PHatMode::Paper) {
        double value = static_cast<double>(m) * p * p;
        if (value > 1.0) {
            if (clamped) *clamped = true;
            return 1.0;
        }
        return value;
    }
    return -std::expm1(static_cast<double>(m) * std::log1p(-p * p));
}

}  // namespace rigkit
