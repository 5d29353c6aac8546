#include <doctest.h>

#include "rigkit/stats.hpp"
#include "rigkit/witness.hpp"

using namespace rigkit;

namespace {

Embedding identity_embedding(int h) {
    Embedding e;
    e.h = h;
    for (int i = 0; i < h; ++i) e.image[i] = static_cast<std::uint32_t>(i);
    return e;
}

IncidenceSample fixture(std::int64_t n, std::vector<std::vector<std::uint32_t>> sets) {
    IncidenceSample s;
    s.n = n;
    s.m = static_cast<std::int64_t>(sets.size());
    s.chooser_sets = std::move(sets);
    return s;
}

}  // namespace

TEST_CASE("witness recovers the inducing cover on handcrafted fixtures") {
    PatternGraph k3 = make_complete(3);

    // one object holding the whole triangle, everything else touching <= 1
    IncidenceSample one = fixture(5, {{0, 1, 2}, {3}, {0}, {}});
    WitnessContext ctx1(one);
    CHECK(ctx1.witness(k3, identity_embedding(3)) == CliqueCover({0b111}));

    // three edge objects
    IncidenceSample three = fixture(4, {{0, 1}, {0, 2}, {1, 2}, {3}});
    WitnessContext ctx3(three);
    CHECK(ctx3.witness(k3, identity_embedding(3)) ==
          CliqueCover({0b011, 0b101, 0b110}));

    // redundant cover: {123} plus {12} is a distinct event
    IncidenceSample redundant = fixture(3, {{0, 1, 2}, {0, 1}});
    WitnessContext ctxr(redundant);
    CHECK(ctxr.witness(k3, identity_embedding(3)) == CliqueCover({0b011, 0b111}));
}

TEST_CASE("witness rejects copies that are not induced") {
    PatternGraph k3 = make_complete(3);
    IncidenceSample path = fixture(3, {{0, 1}, {1, 2}});
    WitnessContext ctx(path);
    CHECK_THROWS_AS(ctx.witness(k3, identity_embedding(3)), std::invalid_argument);

    // extra adjacency beyond the pattern is also not induced
    PatternGraph p3 = make_path(3);
    IncidenceSample triangle = fixture(3, {{0, 1, 2}});
    WitnessContext ctx2(triangle);
    CHECK_THROWS_AS(ctx2.witness(p3, identity_embedding(3)), std::invalid_argument);
}

TEST_CASE("orbit canonicalization is automorphism invariant") {
    PatternGraph k3 = make_complete(3);
    CliqueCover cover({0b011, 0b111});
    CliqueCover canon = canonical_cover_orbit(cover, k3);
    for (const auto& sigma : automorphisms(k3)) {
        std::vector<VertexMask> relabelled;
        for (VertexMask c : cover.cliques) {
            VertexMask m = 0;
            for (int v = 0; v < 3; ++v)
                if ((c >> v) & 1u) m |= VertexMask{1} << sigma[v];
            relabelled.push_back(m);
        }
        CHECK(canonical_cover_orbit(CliqueCover(relabelled), k3) == canon);
    }
}

TEST_CASE("witnessing through different embeddings lands in one orbit") {
    PatternGraph k3 = make_complete(3);
    IncidenceSample sample = fixture(3, {{0, 1, 2}, {1, 2}});
    WitnessContext ctx(sample);
    Embedding a = identity_embedding(3);
    Embedding b;
    b.h = 3;
    b.image = {2, 0, 1, 0, 0, 0, 0, 0};
    CHECK(canonical_cover_orbit(ctx.witness(k3, a), k3) ==
          canonical_cover_orbit(ctx.witness(k3, b), k3));
}

TEST_CASE("per_cover_counts fixtures") {
    PatternGraph k3 = make_complete(3);
    std::vector<CliqueCover> c0{CliqueCover({0b111})};  // C0 at alpha < 3

    IncidenceSample empty = fixture(6, {{0}, {5}, {}});
    CoverCounts none = per_cover_counts(empty, k3, c0);
    CHECK(none.x == 0);
    CHECK(none.y0 == 0);
    CHECK(none.y1 == 0);

    IncidenceSample one_triangle = fixture(6, {{0, 1, 2}, {4, 5}});
    CoverCounts counts = per_cover_counts(one_triangle, k3, c0);
    CHECK(counts.x == 1);
    CHECK(counts.y0 == 1);
    CHECK(counts.y1 == 0);

    // a three-edge triangle on {3,4,5} is a Y1 event under this C0
    IncidenceSample mixed = fixture(6, {{0, 1, 2}, {3, 4}, {4, 5}, {3, 5}});
    CoverCounts split = per_cover_counts(mixed, k3, c0);
    CHECK(split.x == 2);
    CHECK(split.y0 == 1);
    CHECK(split.y1 == 1);
}

TEST_CASE("partition: every induced copy receives exactly one orbit") {
    PatternGraph k3 = make_complete(3);
    Eta0Result scan = eta0(k3, make_rational(1));
    for (int r = 0; r < 200; ++r) {
        IncidenceSample sample =
            sample_incidence(40, 40, 0.05, SeedSpec{404, static_cast<std::uint64_t>(r)});
        HostGraph host = project_graph(sample);
        CoverCounts counts = per_cover_counts(sample, host, k3, scan.c0);
        CHECK(counts.x == count_induced_copies(host, k3));
        CHECK(counts.y0 + counts.y1 == counts.x);
        std::uint64_t orbit_total = 0;
        for (const auto& [orbit, count] : counts.per_orbit) {
            CHECK(is_valid_cover(k3, orbit));
            orbit_total += count;
        }
        CHECK(orbit_total == counts.x);
    }
}

TEST_CASE("P(Y1 > 0) falls along n for a strictly balanced fixture") {
    // K3 at alpha = 3: C0 holds both extreme covers; Y1 collects the mixed
    // ones, whose expectation decays like 1/n.
    PatternGraph k3 = make_complete(3);
    ExperimentConfig config;
    config.alpha = make_rational(3);
    config.c = 1.0;
    config.n_grid = {16, 32, 64};
    config.replicates = 600;
    config.master_seed = 11;
    config.bootstrap_resamples = 50;
    ExperimentResult result = run_experiment(k3, config);
    REQUIRE(result.per_n.size() == 3);
    double first = static_cast<double>(result.per_n.front().y1_positive);
    double last = static_cast<double>(result.per_n.back().y1_positive);
    CHECK(first > last);
    CHECK(result.per_n[1].y1_positive <= result.per_n[0].y1_positive);
}
