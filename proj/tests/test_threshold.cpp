#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rigkit/threshold.hpp"

using namespace rigkit;

namespace {

Rational rat(long long n, long long d = 1) { return make_rational(n, d); }

// Reference for the scan kernel: materialize the family, evaluate eta1 per
// cover, take max and argmax directly.
std::pair<Rational, std::vector<CliqueCover>> eta0_reference(const PatternGraph& g,
                                                             const Rational& alpha) {
    std::vector<CliqueCover> family = enumerate_proper_covers(g);
    Rational best(-1);
    for (const auto& cover : family) best = std::max(best, eta1(g, cover, alpha));
    std::vector<CliqueCover> argmax;
    for (const auto& cover : family)
        if (eta1(g, cover, alpha) == best) argmax.push_back(cover);
    return {best, argmax};
}

PatternGraph random_pattern(std::mt19937_64& gen, int h) {
    while (true) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < h; ++u)
            for (int v = u + 1; v < h; ++v)
                if (gen() % 100 < 55) edges.emplace_back(u, v);
        if (!edges.empty()) return PatternGraph(h, edges);
    }
}

}  // namespace

TEST_CASE("eta2 on the worked K3 values") {
    PatternGraph k3 = make_complete(3);
    CliqueCover triangle({0b111});
    CliqueCover edges({0b011, 0b101, 0b110});

    CHECK(eta2(k3, triangle, k3.vertices(), rat(1)) == rat(4, 3));
    auto detail = eta2_detail(edges, k3.vertices(), rat(3));
    CHECK(detail->value == rat(2));
    CHECK(detail->used_prime_branch);

    // all restrictions singletons: the first branch with sum = card
    CliqueCover p3_edges({0b011, 0b110});
    auto endpoints = eta2_detail(p3_edges, 0b101, rat(2));
    CHECK(endpoints->value == (rat(2) + rat(2) * 2) / 2);  // (|S| + alpha card)/card
    CHECK(!endpoints->used_prime_branch);

    // boundary alpha = |S| / (sum - card) routes to the prime branch
    auto boundary = eta2_detail(edges, k3.vertices(), rat(1));
    CHECK(boundary->boundary_fired);
    CHECK(boundary->value == rat(1));

    CHECK_THROWS_AS(eta2(k3, triangle, 0, rat(1)), std::invalid_argument);
    CHECK(!eta2_detail(CliqueCover({0b011}), 0b100, rat(1)).has_value());  // S untouched
}

TEST_CASE("eta2 equals the smaller of the two monomial roots") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 60; ++trial) {
        PatternGraph g = random_pattern(gen, 4 + static_cast<int>(gen() % 2));
        auto covers = enumerate_proper_covers(g);
        const CliqueCover& cover = covers[gen() % covers.size()];
        VertexMask s = static_cast<VertexMask>(1 + gen() % g.vertices());
        Rational alpha(1 + static_cast<long long>(gen() % 12),
                       1 + static_cast<long long>(gen() % 5));
        auto detail = eta2_detail(cover, s, alpha);
        auto [all1, ge2] = restrict_cover(cover, s);
        if (all1.card() == 0) {
            CHECK(!detail.has_value());
            continue;
        }
        Rational r1 = (Rational(subset_size(s)) + alpha * all1.card()) / all1.sum_sizes();
        Rational root = r1;
        if (ge2.card() > 0) {
            Rational r2 = (Rational(subset_size(s)) + alpha * ge2.card()) / ge2.sum_sizes();
            root = std::min(r1, r2);
        }
        CHECK(detail->value == root);
    }
}

TEST_CASE("eta1 fixtures") {
    PatternGraph k3 = make_complete(3);
    CHECK(eta1(k3, CliqueCover({0b111}), rat(1)) == rat(4, 3));
    CHECK(eta1(k3, CliqueCover({0b011, 0b101, 0b110}), rat(1)) == rat(1));
    PatternGraph k2 = make_complete(2);
    for (long long a = 1; a <= 5; ++a)
        CHECK(eta1(k2, CliqueCover({0b11}), rat(a, 2)) == (rat(2) + rat(a, 2)) / 2);
}

TEST_CASE("eta0 fixtures from the worked examples") {
    PatternGraph k3 = make_complete(3);
    auto at1 = eta0(k3, rat(1));
    CHECK(at1.eta0 == rat(4, 3));
    REQUIRE(at1.c0.size() == 1);
    CHECK(at1.c0[0] == CliqueCover({0b111}));
    CHECK(at1.cover_family_size == 9);

    auto at3 = eta0(k3, rat(3));
    CHECK(at3.eta0 == rat(2));
    CHECK(at3.c0.size() == 2);

    auto c4 = eta0(make_cycle(4), rat(1));
    CHECK(c4.eta0 == rat(1));
    REQUIRE(c4.c0.size() == 1);
    CHECK(c4.c0[0].cliques.size() == 4);
}

TEST_CASE("eta0 piecewise exponents for K_h") {
    for (int h : {3, 4, 5}) {
        PatternGraph kh = make_complete(h);
        Rational boundary(2 * h, h - 1);
        // below: 1 + alpha/h ; at: (h+1)/(h-1) ; above: 1/(h-1) + alpha/2
        Rational below = rat(1);
        CHECK(eta0(kh, below).eta0 == Rational(1) + below / h);
        CHECK(eta0(kh, boundary).eta0 == Rational(h + 1, h - 1));
        Rational above = boundary * 2;
        CHECK(eta0(kh, above).eta0 == Rational(1, h - 1) + above / 2);
        CHECK(eta0(kh, boundary).c0.size() == 2);
        CHECK(eta0(kh, below).c0.size() == 1);
        CHECK(eta0(kh, above).c0.size() == 1);
    }
}

TEST_CASE("eta0 scan agrees with the materialized reference") {
    std::mt19937_64 gen(53);
    int done = 0;
    while (done < 25) {
        int h = 4 + static_cast<int>(gen() % 3);
        PatternGraph g = random_pattern(gen, h);
        if (enumerate_cliques(g).size() > 12) continue;  // keep the reference cheap
        ++done;
        Rational alpha(1 + static_cast<long long>(gen() % 10),
                       1 + static_cast<long long>(gen() % 4));
        auto [want, want_argmax] = eta0_reference(g, alpha);
        for (int threads : {1, 2}) {
            Eta0Result got = eta0(g, alpha, {}, threads);
            CHECK(got.eta0 == want);
            CHECK(got.c0 == want_argmax);
        }
    }
}

TEST_CASE("eta0 scan collects exact ties at boundary alphas") {
    // boundary alphas are where the argmax set jumps; check directly against
    // the materialized reference
    for (int h : {3, 4}) {
        PatternGraph kh = make_complete(h);
        auto [want, want_argmax] = eta0_reference(kh, Rational(2 * h, h - 1));
        Eta0Result got = eta0(kh, Rational(2 * h, h - 1));
        CHECK(got.eta0 == want);
        CHECK(got.c0 == want_argmax);
        CHECK(got.c0.size() == 2);
    }
}

TEST_CASE("classify_balance: cycles are strictly balanced for every alpha") {
    for (int t : {4, 5, 6}) {
        for (auto alpha : {rat(1, 10), rat(1), rat(5)}) {
            ThresholdReport report = classify_balance(make_cycle(t), alpha);
            CHECK(report.strictly_alpha_balanced);
            CHECK(report.eta0 == Rational(1, 2) + alpha / 2);
            REQUIRE(report.c0.size() == 1);
            CHECK(report.c0[0].sum_sizes == 2 * t);
        }
    }
}

TEST_CASE("classify_balance: K_{2,3} loses strict balance at small alpha") {
    PatternGraph k23 = make_complete_bipartite(2, 3);
    // t - k = 1, 2tk = 12: at alpha = 1/12 a violating subset must exist.
    ThresholdReport tight = classify_balance(k23, rat(1, 12));
    CHECK(!tight.strictly_alpha_balanced);
    REQUIRE(tight.c0.size() == 1);
    CHECK(tight.c0[0].verdict == BalanceVerdict::Unbalanced);
    REQUIRE(tight.c0[0].witness.has_value());
    VertexMask witness = *tight.c0[0].witness;
    CHECK(eta2(k23, tight.c0[0].cover, witness, rat(1, 12)) <
          eta2(k23, tight.c0[0].cover, k23.vertices(), rat(1, 12)));

    // the example's boundary alpha = (t-k)/(tk) = 1/6 gives equality: neither
    ThresholdReport boundary = classify_balance(k23, rat(1, 6));
    CHECK(!boundary.strictly_alpha_balanced);
    CHECK(boundary.c0[0].verdict == BalanceVerdict::Neither);

    ThresholdReport ok = classify_balance(k23, rat(1));
    CHECK(ok.strictly_alpha_balanced);
    CHECK(ok.eta0 == rat(5, 12) + rat(1) / 2);
}

TEST_CASE("unbalanced witness is a strict violation even after an equality") {
    // edge plus isolated vertex: S = {1} ties eta2(V) = 2 at alpha = 1, but
    // S = {1,2} strictly undercuts it; the witness must be the strict one.
    PatternGraph g(3, {{0, 1}});
    ThresholdReport report = classify_balance(g, rat(1));
    CHECK(report.eta0 == rat(3, 2));
    REQUIRE(report.c0.size() == 1);
    CHECK(report.c0[0].verdict == BalanceVerdict::Unbalanced);
    REQUIRE(report.c0[0].witness.has_value());
    CHECK(eta2(g, report.c0[0].cover, *report.c0[0].witness, rat(1)) <
          report.c0[0].eta2_at_v);
}

TEST_CASE("triangle-free strictly balanced patterns keep the edge-cover exponent") {
    std::vector<PatternGraph> patterns{make_cycle(4), make_cycle(5), make_cycle(6),
                                       make_complete_bipartite(2, 3),
                                       make_complete_bipartite(3, 3)};
    for (const auto& g : patterns) {
        REQUIRE(is_strictly_balanced(g));
        int h = g.vertex_count(), e = g.edge_count();
        // any alpha strictly above h/e
        Rational alpha = Rational(h, e) + Rational(1, 7);
        ThresholdReport report = classify_balance(g, alpha);
        CHECK(report.strictly_alpha_balanced);
        CHECK(report.eta0 == Rational(h, 2 * e) + alpha / 2);
        REQUIRE(report.c0.size() == 1);
        CHECK(report.c0[0].sum_sizes == 2 * e);
    }
}

TEST_CASE("C0 members satisfy the definitional identities") {
    std::mt19937_64 gen(67);
    for (int trial = 0; trial < 15; ++trial) {
        PatternGraph g = random_pattern(gen, 4 + static_cast<int>(gen() % 2));
        Rational alpha(1 + static_cast<long long>(gen() % 6),
                       1 + static_cast<long long>(gen() % 3));
        ThresholdReport report = classify_balance(g, alpha);
        for (const auto& verdict : report.c0) {
            CHECK(verdict.eta1 == report.eta0);
            CHECK(verdict.eta1 <= verdict.eta2_at_v);
            if (verdict.verdict == BalanceVerdict::StrictlyBalanced) {
                CHECK(verdict.eta1 == verdict.eta2_at_v);
                for (const auto& [s, value] : verdict.eta2_table)
                    if (s != g.vertices()) CHECK(value > report.eta0);
            }
        }
        if (report.all_covers)
            for (const auto& [cover, value] : *report.all_covers)
                CHECK(value <= report.eta0);
    }
}

TEST_CASE("lambda0 fixtures and monotonicity in c") {
    PatternGraph k3 = make_complete(3);
    for (double c : {0.5, 1.0, 2.0}) {
        CHECK(lambda0(k3, rat(3), c) ==
              doctest::Approx((std::pow(c, 3) + std::pow(c, 6)) / 6.0).epsilon(1e-15));
        CHECK(lambda0(make_cycle(4), rat(1), c) ==
              doctest::Approx(std::pow(c, 8) / 8.0).epsilon(1e-15));
        CHECK(lambda0(make_complete_bipartite(2, 3), rat(1), c) ==
              doctest::Approx(std::pow(c, 12) / 12.0).epsilon(1e-15));
    }
    double prev = 0.0;
    for (double c : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        double value = lambda0(k3, rat(1), c);
        CHECK(value > prev);
        prev = value;
    }
}

TEST_CASE("model params: m is the exact floor of n^alpha") {
    CHECK(ModelParams::with_explicit_p(1000000, rat(1, 2), 0.5).m == BigInt(1000));
    CHECK(ModelParams::with_explicit_p(1000000, rat(2, 3), 0.5).m == BigInt(10000));
    CHECK(ModelParams::with_explicit_p(100, rat(3, 2), 0.5).m == BigInt(1000));
    CHECK(ModelParams::with_explicit_p(27, rat(1, 3), 0.5).m == BigInt(3));
    CHECK(ModelParams::with_explicit_p(26, rat(1, 3), 0.5).m == BigInt(2));
    CHECK(ModelParams::with_explicit_p(7, rat(5, 1), 0.5).m == BigInt(16807));
    ModelParams clamped = ModelParams::from_threshold(10, rat(1), 5.0, rat(1, 2));
    CHECK(clamped.p == 1.0);
    CHECK(clamped.p_clamped);
}

TEST_CASE("psi values") {
    PatternGraph k3 = make_complete(3);
    CliqueCover edges({0b011, 0b101, 0b110});
    ModelParams params = ModelParams::with_explicit_p(100, rat(1), 0.001);
    // restrictions of an edge subset: C[S] has sizes {2,1,1}, C'[S] = {2}:
    // min(100^5 p^4, 100^3 p^2) = min(1e-2, 1)
    CHECK(psi(edges, 0b011, params) == doctest::Approx(1e-2).epsilon(1e-12));

    // S = V: both monomials coincide
    CliqueCover triangle({0b111});
    ModelParams at_eta = ModelParams::from_threshold(1000, rat(1), 1.0, rat(4, 3));
    CHECK(psi(triangle, k3.vertices(), at_eta) == doctest::Approx(1.0).epsilon(1e-9));

    // empty C'[S]: the second monomial degenerates to n^{|S|}
    ModelParams tiny = ModelParams::with_explicit_p(100, rat(1), 1e-30);
    CHECK(psi(triangle, 0b001, tiny) ==
          doctest::Approx(std::min(std::pow(100.0, 2) * 1e-30, 100.0)).epsilon(1e-12));

    // omega is bounded by every singleton psi
    for (VertexMask s = 1; s < k3.vertices(); ++s)
        CHECK(omega(k3, edges, params) <= psi(edges, s, params) * (1 + 1e-12));
}

TEST_CASE("phi grows along n for strictly balanced fixtures") {
    double small = phi(make_complete(3), rat(1), 1.0, 100);
    double large = phi(make_complete(3), rat(1), 1.0, 10000);
    CHECK(large > small);
    CHECK(phi(make_cycle(4), rat(1), 1.0, 10000) > phi(make_cycle(4), rat(1), 1.0, 100));
}

TEST_CASE("pi predictors") {
    PatternGraph k3 = make_complete(3);
    CliqueCover triangle({0b111});
    CliqueCover edges({0b011, 0b101, 0b110});
    ModelParams params = ModelParams::with_explicit_p(100, rat(1), 0.001);
    double m = params.m_real, p = params.p;

    CHECK(pi_predict(triangle, params) == doctest::Approx(m * p * p * p).epsilon(1e-12));
    CHECK(pi_predict(edges, params) == doctest::Approx(std::pow(m * p * p, 3)).epsilon(1e-12));
    CHECK(pi_order(edges, params) ==
          doctest::Approx(std::min(std::pow(m, 3) * std::pow(p, 6),
                                   std::pow(m, 3) * std::pow(p, 6))).epsilon(1e-12));

    // singleton cliques contribute 1 - e^{-mp}; for huge mp the factor is 1
    CliqueCover with_singleton({0b001, 0b110});
    ModelParams dense = ModelParams::with_explicit_p(100, rat(1), 0.9);
    double factor = pi_predict(with_singleton, dense) /
                    (dense.m_real * std::pow(dense.p, 2));
    CHECK(factor == doctest::Approx(1.0).epsilon(1e-6));

    // order vs predict within [1/e, e] on both sides of mp = 1
    for (double pp : {0.002, 0.05}) {
        ModelParams mp = ModelParams::with_explicit_p(100, rat(1), pp);
        CliqueCover restricted({0b001, 0b010, 0b110});  // two singletons, one edge
        double ratio = pi_predict(restricted, mp) / pi_order(restricted, mp);
        CHECK(ratio >= 1.0 / std::exp(1.0));
        CHECK(ratio <= std::exp(1.0));
    }

    // above-threshold variant
    ModelParams above = ModelParams::with_explicit_p(10000, rat(1), 0.012);
    double mp2 = above.m_real * above.p * above.p;
    CHECK(pi_predict_above(k3, triangle, above) ==
          doctest::Approx(std::exp(-3 * mp2) * above.m_real * std::pow(above.p, 3))
              .epsilon(1e-9));
    CHECK(pi_predict_above(k3, edges, above) ==
          doctest::Approx(std::pow(-std::expm1(-mp2), 3)).epsilon(1e-9));
}

TEST_CASE("regime diagnostics") {
    auto k3 = regime_check(make_complete(3), rat(1));
    CHECK(k3.eta0 == rat(4, 3));
    CHECK(k3.mp2_vanishes);
    CHECK(!k3.asymptotically_complete);

    auto c4 = regime_check(make_cycle(4), rat(4));
    CHECK(c4.eta0 == rat(5, 2));
    CHECK(c4.mp2_vanishes);

    // the sign test itself, on a hypothetical exponent
    auto fail = regime_from_eta0(rat(1, 4), rat(1));
    CHECK(!fail.mp2_vanishes);
    CHECK(fail.asymptotically_complete);
    auto empty = regime_from_eta0(rat(3), rat(1));
    CHECK(empty.asymptotically_edgeless);
}

TEST_CASE("eta0 budget refusal") {
    ScanBudget tight;
    tight.max_subsets = 4;
    CHECK_THROWS_AS(eta0(make_complete(3), rat(1), tight), BudgetError);
    CHECK_THROWS_AS(eta0(make_complete(6), rat(1)), BudgetError);
}
