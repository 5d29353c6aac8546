#include <doctest.h>

#include <cmath>

#include "rigkit/json_io.hpp"
#include "rigkit/oracle.hpp"
#include "rigkit/stats.hpp"

using namespace rigkit;

TEST_CASE("serialization shapes: rationals and covers") {
    CHECK(to_json(make_rational(4, 3)).dump() == R"({"num":4,"den":3})");
    CHECK(to_json(make_rational(-7, 14)).dump() == R"({"num":-1,"den":2})");
    // arrays of arrays of 1-indexed ids, canonically sorted
    CliqueCover cover({0b110, 0b011});
    CHECK(to_json(cover).dump() == "[[1,2],[2,3]]");
    CHECK(subset_to_json(0b101).dump() == "[1,3]");
}

TEST_CASE("poisson pmf values") {
    CHECK(poisson_pmf(0.0, 0) == 1.0);
    CHECK(poisson_pmf(0.0, 3) == 0.0);
    CHECK(poisson_pmf(1.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(poisson_pmf(0.125, 2) == doctest::Approx(std::exp(-0.125) / 128.0).epsilon(1e-14));
    CHECK_THROWS_AS(poisson_pmf(-1.0, 0), std::invalid_argument);
}

TEST_CASE("poisson table truncation is accounted for") {
    PoissonTable table = poisson_pmf_table(2.5, 1e-12, 4);
    double mass = 0.0;
    for (double x : table.pmf) mass += x;
    CHECK(mass + table.tail == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.tail < 1e-12);
    CHECK(table.pmf.size() >= 4);
}

TEST_CASE("tv distance basics and the point-mass formula") {
    std::vector<double> a{0.5, 0.5};
    CHECK(tv_distance(a, a) == 0.0);
    std::vector<double> b{1.0};
    CHECK(tv_distance(a, b) == doctest::Approx(0.5).epsilon(1e-15));

    for (double lambda : {0.1, 0.5, 1.0, 3.0}) {
        TvResult tv = tv_to_poisson({1.0}, lambda);
        CHECK(tv.value == doctest::Approx(1.0 - std::exp(-lambda)).epsilon(1e-11));
    }
}

TEST_CASE("tv is a metric on fixture triples") {
    std::vector<std::vector<double>> pmfs{
        {0.7, 0.2, 0.1}, {0.4, 0.4, 0.2}, {0.1, 0.3, 0.6}, {1.0}};
    for (const auto& x : pmfs)
        for (const auto& y : pmfs) {
            CHECK(tv_distance(x, y) == doctest::Approx(tv_distance(y, x)).epsilon(1e-15));
            if (x == y) CHECK(tv_distance(x, y) == 0.0);
            for (const auto& z : pmfs)
                CHECK(tv_distance(x, z) <= tv_distance(x, y) + tv_distance(y, z) + 1e-15);
        }
}

TEST_CASE("poisson-poisson tv is bounded by the parameter gap") {
    for (double l1 : {0.1, 0.5, 1.0, 2.0})
        for (double l2 : {0.1, 0.5, 1.0, 2.0}) {
            PoissonTable t1 = poisson_pmf_table(l1, 1e-14, 64);
            PoissonTable t2 = poisson_pmf_table(l2, 1e-14, 64);
            CHECK(tv_distance(t1.pmf, t2.pmf) <= std::abs(l1 - l2) + 1e-10);
        }
}

TEST_CASE("tv regression: exact P3 distribution vs Poisson at its mean") {
    auto pmf = exact_distribution(make_path(3), 4, 3, 0.3);
    double mean = exact_mean(make_path(3), 4, 3, 0.3);
    TvResult tv = tv_to_poisson(pmf, mean);
    // frozen from the exact-oracle run of this configuration
    CHECK(tv.value == doctest::Approx(0.09269828384051498).epsilon(1e-10));
}

TEST_CASE("bootstrap is deterministic and thread-count independent") {
    std::vector<std::uint64_t> histogram{1700, 260, 35, 5};
    BootstrapCI one = bootstrap_tv_ci(histogram, 0.17, 400, 0.95, SeedSpec{5, 0}, 1);
    BootstrapCI two = bootstrap_tv_ci(histogram, 0.17, 400, 0.95, SeedSpec{5, 0}, 2);
    CHECK(one.lower == two.lower);
    CHECK(one.upper == two.upper);
    CHECK(one.lower <= one.upper);
    CHECK(one.lower >= 0.0);
}

TEST_CASE("run_experiment at p = 0 gives the point-mass TV") {
    PatternGraph c4 = make_cycle(4);
    ExperimentConfig config;
    config.alpha = make_rational(1);
    config.n_grid = {60};
    config.replicates = 50;
    config.p_override = 0.0;
    config.bootstrap_resamples = 50;
    config.master_seed = 3;
    ExperimentResult result = run_experiment(c4, config);
    REQUIRE(result.per_n.size() == 1);
    CHECK(result.lambda0 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(result.per_n[0].mean == 0.0);
    CHECK(result.per_n[0].tv.value ==
          doctest::Approx(1.0 - std::exp(-0.125)).epsilon(1e-10));
}

TEST_CASE("run_experiment is reproducible and thread-count independent") {
    PatternGraph k3 = make_complete(3);
    ExperimentConfig config;
    config.alpha = make_rational(1);
    config.n_grid = {80, 120};
    config.replicates = 300;
    config.master_seed = 21;
    config.bootstrap_resamples = 100;
    config.keep_replicates = true;

    config.threads = 1;
    ExperimentResult serial = run_experiment(k3, config);
    config.threads = 2;
    ExperimentResult parallel = run_experiment(k3, config);

    REQUIRE(serial.per_n.size() == parallel.per_n.size());
    for (std::size_t i = 0; i < serial.per_n.size(); ++i) {
        Json a = to_json(serial.per_n[i], true);
        Json b = to_json(parallel.per_n[i], true);
        CHECK(a.dump() == b.dump());
    }
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].counts.x == parallel.rows[i].counts.x);
        CHECK(serial.rows[i].counts.y0 == parallel.rows[i].counts.y0);
    }
}

TEST_CASE("run_experiment refuses a non-vanishing regime without force") {
    // No real pattern can put alpha >= 2 eta0 at threshold scaling, so the
    // refusal path is exercised through the diagnostics helper directly.
    CHECK(!regime_from_eta0(make_rational(1, 4), make_rational(1)).mp2_vanishes);
}

TEST_CASE("K3 empirical mean approaches lambda0 at n = 500") {
    PatternGraph k3 = make_complete(3);
    ExperimentConfig config;
    config.alpha = make_rational(1);
    config.c = 1.0;
    config.n_grid = {500};
    config.replicates = 2000;
    config.master_seed = 2024;
    config.bootstrap_resamples = 200;
    ExperimentResult result = run_experiment(k3, config);
    CHECK(result.lambda0 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const auto& s = result.per_n[0];
    double se = std::sqrt(s.variance / static_cast<double>(s.replicates));
    CHECK(std::abs(s.mean - 1.0 / 6.0) < 1.96 * se + 1e-12);
}

TEST_CASE("two independent runs of one distribution sit within the bootstrap width") {
    PatternGraph c4 = make_cycle(4);
    ExperimentConfig config;
    config.alpha = make_rational(1);
    config.n_grid = {150};
    config.replicates = 2000;
    config.bootstrap_resamples = 400;
    config.master_seed = 100;
    ExperimentResult first = run_experiment(c4, config);
    config.master_seed = 200;
    ExperimentResult second = run_experiment(c4, config);
    double gap = tv_distance(first.per_n[0].pmf, second.per_n[0].pmf);
    double width = first.per_n[0].ci.upper - first.per_n[0].ci.lower;
    CHECK(gap < width);
}
