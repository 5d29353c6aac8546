#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rigkit/sampler.hpp"

using namespace rigkit;

namespace {

double binomial_pmf(int n, double p, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                    k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace

TEST_CASE("sampling is deterministic in (n, m, p, seed)") {
    IncidenceSample a = sample_incidence(50, 40, 0.05, SeedSpec{9, 3});
    IncidenceSample b = sample_incidence(50, 40, 0.05, SeedSpec{9, 3});
    CHECK(a.chooser_sets == b.chooser_sets);
    IncidenceSample c = sample_incidence(50, 40, 0.05, SeedSpec{9, 4});
    CHECK(a.chooser_sets != c.chooser_sets);
    IncidenceSample d = sample_incidence(50, 40, 0.05, SeedSpec{10, 3});
    CHECK(a.chooser_sets != d.chooser_sets);
}

TEST_CASE("degenerate probabilities") {
    IncidenceSample zero = sample_incidence(10, 5, 0.0, SeedSpec{1, 0});
    for (const auto& set : zero.chooser_sets) CHECK(set.empty());
    IncidenceSample one = sample_incidence(10, 5, 1.0, SeedSpec{1, 0});
    for (const auto& set : one.chooser_sets) CHECK(set.size() == 10);
    CHECK_THROWS_AS(sample_incidence(10, 5, 1.5, SeedSpec{}), std::invalid_argument);
}

TEST_CASE("projection fixtures") {
    IncidenceSample sample;
    sample.n = 5;
    sample.m = 2;
    sample.chooser_sets = {{0, 1, 2}, {4}};
    HostGraph g = project_graph(sample);
    CHECK(g.edge_count() == 3);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(0, 2));
    CHECK(g.degree(3) == 0);
    CHECK(g.degree(4) == 0);

    sample.chooser_sets = {{0, 1}, {1, 2}};
    HostGraph path = project_graph(sample);
    CHECK(path.edge_count() == 2);
    CHECK(path.adjacent(0, 1));
    CHECK(path.adjacent(1, 2));
    CHECK(!path.adjacent(0, 2));

    // projection depends only on the family of chooser sets
    IncidenceSample swapped = sample;
    std::swap(swapped.chooser_sets[0], swapped.chooser_sets[1]);
    CHECK(project_graph(swapped).to_edge_list_text() == path.to_edge_list_text());

    sample.chooser_sets = {{0}, {3}, {}};
    CHECK(project_graph(sample).edge_count() == 0);
}

TEST_CASE("total incidences concentrate around n m p") {
    // mean of Binomial(n*m, p) over replicates, within 4 sigma
    std::int64_t n = 100, m = 100;
    double p = 0.05;
    int reps = 2000;
    double total = 0;
    for (int r = 0; r < reps; ++r)
        total += static_cast<double>(
            sample_incidence(n, m, p, SeedSpec{2024, static_cast<std::uint64_t>(r)})
                .total_incidences());
    double mean = total / reps;
    double sigma = std::sqrt(n * m * p * (1 - p) / reps);
    CHECK(std::abs(mean - n * m * p) < 4 * sigma);
}

TEST_CASE("per-vertex object counts follow Binomial(m, p)") {
    // chi-square over pre-registered bins at the 1% level
    std::int64_t n = 20, m = 50;
    double p = 0.2;
    int reps = 600;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n * reps), 0);
    for (int r = 0; r < reps; ++r) {
        IncidenceSample s = sample_incidence(n, m, p, SeedSpec{77, static_cast<std::uint64_t>(r)});
        for (const auto& set : s.chooser_sets)
            for (std::uint32_t v : set) ++counts[static_cast<std::size_t>(r) * n + v];
    }
    // bins {<=5, 6, 7, ..., 14, >=15}: every expected count is comfortably > 5
    const int lo = 5, hi = 15;
    std::vector<double> expected(hi - lo + 1, 0.0);
    for (int k = 0; k <= static_cast<int>(m); ++k) {
        int bin = std::clamp(k, lo, hi) - lo;
        expected[static_cast<std::size_t>(bin)] += binomial_pmf(static_cast<int>(m), p, k);
    }
    std::vector<double> observed(expected.size(), 0.0);
    for (std::int64_t c : counts)
        ++observed[static_cast<std::size_t>(std::clamp<std::int64_t>(c, lo, hi) - lo)];
    double total = static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (std::size_t b = 0; b < expected.size(); ++b) {
        double e = expected[b] * total;
        chi2 += (observed[b] - e) * (observed[b] - e) / e;
    }
    // df = 10, critical value at 1%: 23.21
    CHECK(chi2 < 23.21);
}

TEST_CASE("skip-sampling path matches the naive path in distribution") {
    // two-sample KS on per-replicate incidence totals at the 1% level
    std::int64_t n = 400, m = 50;
    double p = 0.004;  // below the sparse threshold: skip path
    int reps = 1000;
    std::vector<double> skip, naive;
    for (int r = 0; r < reps; ++r) {
        skip.push_back(static_cast<double>(
            sample_incidence(n, m, p, SeedSpec{5, static_cast<std::uint64_t>(r)})
                .total_incidences()));
        naive.push_back(static_cast<double>(
            sample_incidence_naive(n, m, p, SeedSpec{6, static_cast<std::uint64_t>(r)})
                .total_incidences()));
    }
    std::sort(skip.begin(), skip.end());
    std::sort(naive.begin(), naive.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < skip.size() && j < naive.size()) {
        if (skip[i] <= naive[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / skip.size() -
                                 static_cast<double>(j) / naive.size()));
    }
    double critical = 1.628 * std::sqrt(2.0 / reps);  // c(0.01) sqrt((n+m)/(nm))
    CHECK(d < critical);
}

TEST_CASE("gnp sampler") {
    CHECK(sample_gnp(30, 0.0, SeedSpec{}).edge_count() == 0);
    CHECK(sample_gnp(30, 1.0, SeedSpec{}).edge_count() == 30 * 29 / 2);
    CHECK(sample_gnp(1, 0.5, SeedSpec{}).edge_count() == 0);

    std::int64_t n = 60;
    double p = 0.08;
    int reps = 1500;
    double total = 0;
    for (int r = 0; r < reps; ++r)
        total += static_cast<double>(
            sample_gnp(n, p, SeedSpec{31, static_cast<std::uint64_t>(r)}).edge_count());
    double pairs = n * (n - 1) / 2.0;
    double sigma = std::sqrt(pairs * p * (1 - p) / reps);
    CHECK(std::abs(total / reps - pairs * p) < 4 * sigma);

    // determinism
    CHECK(sample_gnp(50, 0.1, SeedSpec{3, 1}).to_edge_list_text() ==
          sample_gnp(50, 0.1, SeedSpec{3, 1}).to_edge_list_text());
}

TEST_CASE("p_hat modes") {
    bool clamped = false;
    CHECK(p_hat(100, 0.01, PHatMode::Paper, &clamped) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(!clamped);
    CHECK(p_hat(1, 0.3, PHatMode::Exact) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(p_hat(100, 0.01, PHatMode::Exact) ==
          doctest::Approx(1.0 - std::pow(1.0 - 1e-4, 100)).epsilon(1e-12));
    CHECK(p_hat(1000000, 0.1, PHatMode::Paper, &clamped) == 1.0);
    CHECK(clamped);
}
