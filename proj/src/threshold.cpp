#include "rigkit/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rigkit {

namespace {

double big_log(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    unsigned bits = msb(x);
    if (bits < 60) return std::log(x.convert_to<double>());
    BigInt mant = x >> (bits - 52);
    return std::log(mant.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

}  // namespace

ModelParams ModelParams::from_threshold(std::int64_t n, const Rational& alpha, double c,
                                        const Rational& eta) {
    if (n < 1) throw std::invalid_argument("model: n must be positive");
    if (c <= 0) throw std::invalid_argument("model: c must be positive");
    if (alpha <= 0) throw std::invalid_argument("model: alpha must be positive");
    ModelParams params;
    params.n = n;
    params.alpha = alpha;
    params.c = c;
    params.m = floor_pow(BigInt(n), alpha);
    if (params.m < 1) params.m = 1;
    params.m_real = params.m.convert_to<double>();
    params.p = c * std::exp(-to_double(eta) * std::log(static_cast<double>(n)));
    params.p_exponent = eta;
    if (params.p > 1.0) {
        params.p = 1.0;
        params.p_clamped = true;
    }
    return params;
}

ModelParams ModelParams::with_explicit_p(std::int64_t n, const Rational& alpha, double p) {
    if (n < 1) throw std::invalid_argument("model: n must be positive");
    if (p < 0 || p > 1) throw std::invalid_argument("model: p must be in [0, 1]");
    if (alpha <= 0) throw std::invalid_argument("model: alpha must be positive");
    ModelParams params;
    params.n = n;
    params.alpha = alpha;
    params.m = floor_pow(BigInt(n), alpha);
    if (params.m < 1) params.m = 1;
    params.m_real = params.m.convert_to<double>();
    params.p = p;
    return params;
}

std::int64_t ModelParams::m_int64() const {
    if (m > BigInt(std::numeric_limits<std::int64_t>::max()))
        throw BudgetError("m = floor(n^alpha) does not fit in 64 bits");
    return m.convert_to<std::int64_t>();
}

std::optional<Eta2Detail> eta2_detail(const CliqueCover& cover, VertexMask s,
                                      const Rational& alpha) {
    if (!s) throw std::invalid_argument("eta2: empty S");
    RestrictedPair rp = restrict_cover(cover, s);
    int a = rp.all_nonempty.card();
    int big_a = rp.all_nonempty.sum_sizes();
    int b = rp.size_ge2.card();
    int big_b = rp.size_ge2.sum_sizes();
    if (big_a == 0) return std::nullopt;  // no clique meets S: unconstrained
    int size_s = subset_size(s);
    Eta2Detail out;
    if (big_a == a) {
        out.value = Rational(size_s + 0, 1) + alpha * a;
        out.value /= big_a;
        return out;
    }
    Rational pivot(size_s, big_a - a);
    if (alpha < pivot) {
        out.value = (Rational(size_s) + alpha * a) / big_a;
        return out;
    }
    out.boundary_fired = (alpha == pivot);
    out.used_prime_branch = true;
    if (big_b < 2 || b < 1)
        throw std::logic_error("eta2: prime branch reached with empty C'[S]");
    out.value = (Rational(size_s) + alpha * b) / big_b;
    return out;
}

Rational eta2(const PatternGraph& g, const CliqueCover& cover, VertexMask s,
              const Rational& alpha) {
    if (s & ~g.vertices()) throw std::invalid_argument("eta2: S outside the pattern");
    auto detail = eta2_detail(cover, s, alpha);
    if (!detail) throw std::domain_error("eta2: no clique of the cover meets S");
    return detail->value;
}

Rational eta1(const PatternGraph& g, const CliqueCover& cover, const Rational& alpha) {
    std::optional<Rational> best;
    for (VertexMask s = 1; s <= g.vertices(); ++s) {
        auto detail = eta2_detail(cover, s, alpha);
        if (!detail) continue;
        if (!best || detail->value < *best) best = detail->value;
    }
    if (!best) throw std::logic_error("eta1: cover does not touch the pattern");
    return *best;
}

// ---------------------------------------------------------------------------
// eta0: streaming max/argmax scan over the proper-cover family.
//
// Covers are subsets of the clique list. Restriction profiles over all S are
// maintained incrementally as packed byte counters (card and total size for
// C[S] and C'[S]); the per-subset eta1 evaluation aborts as soon as any S
// drops below the best exponent seen so far. A serial reference of the same
// kernel is kept for tests (threads = 1).
// ---------------------------------------------------------------------------

namespace {

struct Frac {  // num / den with positive den; exact comparisons via int128
    std::int64_t num = -1;
    std::int64_t den = 1;
};

inline bool frac_less(const Frac& x, const Frac& y) {
    return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den;
}
inline bool frac_equal(const Frac& x, const Frac& y) {
    return static_cast<__int128>(x.num) * y.den == static_cast<__int128>(y.num) * x.den;
}

struct ScanContext {
    const PatternGraph* g = nullptr;
    int h = 0;
    int num_subsets = 0;  // 2^h
    std::int64_t alpha_num = 0;
    std::int64_t alpha_den = 1;
    std::vector<VertexMask> cliques;
    std::vector<std::uint32_t> edge_bits;
    std::vector<std::uint32_t> suffix_union;
    std::uint32_t full_edges = 0;
    // Per-clique packed deltas: for each S, bytes [card1, size1, card2, size2].
    std::vector<std::vector<std::uint32_t>> delta;
    std::vector<VertexMask> eval_order;  // V first, then proper nonempty S
    // suffix_size_count[idx][d]: cliques at positions >= idx of size d.
    std::vector<std::array<std::int64_t, kMaxPatternVertices + 1>> suffix_size_count;
};

struct TieEntry {
    std::uint32_t subset;
    Frac value;
};

struct ScanWorker {
    const ScanContext* ctx;
    std::vector<std::uint32_t> profile;
    std::uint32_t covered = 0;
    std::uint32_t chosen = 0;
    Frac best;
    std::vector<TieEntry> ties;
    std::uint64_t leaves = 0;
    std::uint64_t max_ties = 0;

    explicit ScanWorker(const ScanContext& c, Frac seed, std::uint64_t tie_cap)
        : ctx(&c), profile(static_cast<std::size_t>(c.num_subsets), 0), best(seed),
          max_ties(tie_cap) {}

    void push(int idx) {
        const std::uint32_t* d = ctx->delta[static_cast<std::size_t>(idx)].data();
        for (int s = 0; s < ctx->num_subsets; ++s) profile[static_cast<std::size_t>(s)] += d[s];
    }
    void pop(int idx) {
        const std::uint32_t* d = ctx->delta[static_cast<std::size_t>(idx)].data();
        for (int s = 0; s < ctx->num_subsets; ++s) profile[static_cast<std::size_t>(s)] -= d[s];
    }

    // eta1 of the current subset relative to best: returns false if the value
    // is strictly below best (early abort), true with the exact value otherwise.
    bool evaluate(Frac& value) const {
        Frac running{std::numeric_limits<std::int64_t>::max(), 1};
        for (VertexMask s : ctx->eval_order) {
            std::uint32_t packed = profile[s];
            std::int64_t card1 = packed & 0xff;
            std::int64_t size1 = (packed >> 8) & 0xff;
            std::int64_t card2 = (packed >> 16) & 0xff;
            std::int64_t size2 = (packed >> 24) & 0xff;
            if (size1 == 0) continue;  // S untouched: unconstrained
            std::int64_t ssize = subset_size(s);
            Frac r1{ssize * ctx->alpha_den + ctx->alpha_num * card1, ctx->alpha_den * size1};
            Frac r = r1;
            if (size2 > 0) {
                Frac r2{ssize * ctx->alpha_den + ctx->alpha_num * card2, ctx->alpha_den * size2};
                if (frac_less(r2, r)) r = r2;
            }
            if (frac_less(r, best)) return false;
            if (frac_less(r, running)) running = r;
        }
        value = running;
        return true;
    }

    void leaf() {
        ++leaves;
        Frac value;
        if (!evaluate(value)) return;
        if (frac_equal(value, best)) {
            if (ties.size() >= max_ties) throw BudgetError("eta0: argmax set exceeds tie budget");
            ties.push_back({chosen, value});
            return;
        }
        if (frac_less(best, value)) {
            best = value;
            ties.clear();
            ties.push_back({chosen, value});
        }
    }

    // Upper bound on eta1 over every completion of the current selection:
    // eta1(C) <= r(C, V), and the largest reachable r(V) adds whole classes
    // of remaining cliques of size d exactly while alpha/d exceeds the
    // running ratio (the mediant can never cross the class value).
    bool subtree_dead(std::size_t idx) const {
        std::uint32_t packed = profile[static_cast<std::size_t>(ctx->num_subsets - 1)];
        std::int64_t card = packed & 0xff;
        std::int64_t size = (packed >> 8) & 0xff;
        if (size == 0) return false;  // empty selection: the ratio is not yet pinned
        std::int64_t num = ctx->h * ctx->alpha_den + ctx->alpha_num * card;
        std::int64_t den = ctx->alpha_den * size;
        const auto& remaining = ctx->suffix_size_count[idx];
        for (int d = 2; d <= kMaxPatternVertices; ++d) {
            std::int64_t cnt = remaining[static_cast<std::size_t>(d)];
            if (cnt == 0) continue;
            if (static_cast<__int128>(ctx->alpha_num) * den >
                static_cast<__int128>(num) * ctx->alpha_den * d) {
                num += cnt * ctx->alpha_num;
                den += cnt * ctx->alpha_den * d;
            }
        }
        return frac_less(Frac{num, den}, best);
    }

    void dfs(std::size_t idx) {
        if ((covered | ctx->suffix_union[idx]) != ctx->full_edges) return;
        if (subtree_dead(idx)) return;
        if (idx == ctx->cliques.size()) {
            if (covered == ctx->full_edges) leaf();
            return;
        }
        dfs(idx + 1);
        std::uint32_t saved = covered;
        covered |= ctx->edge_bits[idx];
        chosen |= std::uint32_t{1} << idx;
        push(static_cast<int>(idx));
        dfs(idx + 1);
        pop(static_cast<int>(idx));
        chosen &= ~(std::uint32_t{1} << idx);
        covered = saved;
    }
};

ScanContext build_scan_context(const PatternGraph& g, const Rational& alpha,
                               const ScanBudget& budget) {
    ScanContext ctx;
    ctx.g = &g;
    ctx.h = g.vertex_count();
    ctx.num_subsets = 1 << ctx.h;
    BigInt an = rational_num(alpha), ad = rational_den(alpha);
    if (an <= 0) throw std::invalid_argument("eta0: alpha must be positive");
    if (an > 1000000 || ad > 1000000)
        throw BudgetError("eta0: alpha numerator/denominator above 10^6 not supported");
    ctx.alpha_num = an.convert_to<std::int64_t>();
    ctx.alpha_den = ad.convert_to<std::int64_t>();
    ctx.cliques = enumerate_cliques(g);
    std::size_t q = ctx.cliques.size();
    if (q >= 63 || (std::uint64_t{1} << q) > budget.max_subsets)
        throw BudgetError("eta0: pattern has " + std::to_string(q) + " cliques; scanning 2^" +
                          std::to_string(q) + " cover candidates exceeds the budget of " +
                          std::to_string(budget.max_subsets) + " subsets");
    ctx.edge_bits.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
        std::uint32_t bits = 0;
        for (auto [u, v] : g.edges())
            if (((ctx.cliques[i] >> u) & 1u) && ((ctx.cliques[i] >> v) & 1u))
                bits |= std::uint32_t{1} << g.edge_index(u, v);
        ctx.edge_bits[i] = bits;
    }
    ctx.full_edges = (std::uint32_t{1} << g.edge_count()) - 1;
    ctx.suffix_union.assign(q + 1, 0);
    for (std::size_t i = q; i-- > 0;) ctx.suffix_union[i] = ctx.suffix_union[i + 1] | ctx.edge_bits[i];
    ctx.delta.assign(q, std::vector<std::uint32_t>(static_cast<std::size_t>(ctx.num_subsets), 0));
    for (std::size_t i = 0; i < q; ++i)
        for (int s = 1; s < ctx.num_subsets; ++s) {
            std::uint32_t t =
                static_cast<std::uint32_t>(subset_size(ctx.cliques[i] & static_cast<VertexMask>(s)));
            if (t == 0) continue;
            std::uint32_t packed = 1u | (t << 8);
            if (t >= 2) packed |= (1u << 16) | (t << 24);
            ctx.delta[i][static_cast<std::size_t>(s)] = packed;
        }
    ctx.eval_order.push_back(g.vertices());
    for (VertexMask s = 1; s < g.vertices(); ++s) ctx.eval_order.push_back(s);
    ctx.suffix_size_count.assign(q + 1, {});
    for (std::size_t i = q; i-- > 0;) {
        ctx.suffix_size_count[i] = ctx.suffix_size_count[i + 1];
        ctx.suffix_size_count[i][static_cast<std::size_t>(subset_size(ctx.cliques[i]))] += 1;
    }
    return ctx;
}

Frac to_frac(const Rational& value, std::int64_t alpha_den) {
    // Exact values produced by the scan always have denominator dividing
    // alpha_den * 256; normalize through cpp_rational to stay safe.
    BigInt num = rational_num(value), den = rational_den(value);
    (void)alpha_den;
    return Frac{num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

CliqueCover cover_from_subset(const ScanContext& ctx, std::uint32_t subset) {
    std::vector<VertexMask> members;
    for (std::uint32_t left = subset; left;) {
        int i = std::countr_zero(left);
        left &= left - 1;
        members.push_back(ctx.cliques[static_cast<std::size_t>(i)]);
    }
    return CliqueCover(std::move(members));
}

}  // namespace

Eta0Result eta0(const PatternGraph& g, const Rational& alpha, const ScanBudget& budget,
                int threads) {
    ScanContext ctx = build_scan_context(g, alpha, budget);
    std::size_t q = ctx.cliques.size();

    // Seed the running maximum with two covers that are cheap to build and
    // dominate in the extreme regimes: all edges, and all maximal cliques.
    std::vector<VertexMask> edge_cover;
    for (auto [u, v] : g.edges())
        edge_cover.push_back((VertexMask{1} << u) | (VertexMask{1} << v));
    std::vector<VertexMask> maximal;
    for (VertexMask c : ctx.cliques) {
        bool is_maximal = true;
        for (VertexMask d : ctx.cliques)
            if (d != c && (d & c) == c) {
                is_maximal = false;
                break;
            }
        if (is_maximal) maximal.push_back(c);
    }
    Frac seed{-1, 1};
    std::vector<std::pair<CliqueCover, Frac>> seed_covers;
    for (const auto& parts : {edge_cover, maximal}) {
        CliqueCover cover(parts);
        Frac f = to_frac(eta1(g, cover, alpha), ctx.alpha_den);
        if (frac_less(seed, f)) seed = f;
        seed_covers.emplace_back(std::move(cover), f);
    }

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    if (threads <= 0) threads = max_threads;
    threads = std::min<int>(threads, max_threads);

    int split = 0;
    if (threads > 1 && q > 4) split = static_cast<int>(std::min<std::size_t>(q, 10));

    std::vector<ScanWorker> workers;
    if (split == 0) {
        ScanWorker w(ctx, seed, budget.max_ties);
        w.dfs(0);
        workers.push_back(std::move(w));
    } else {
#ifdef _OPENMP
        std::vector<ScanWorker> locals(static_cast<std::size_t>(threads),
                                       ScanWorker(ctx, seed, budget.max_ties));
#pragma omp parallel num_threads(threads)
        {
            ScanWorker& w = locals[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t code = 0; code < (std::int64_t{1} << split); ++code) {
                w.covered = 0;
                w.chosen = 0;
                for (int i = 0; i < split; ++i)
                    if ((code >> i) & 1) {
                        w.push(i);
                        w.covered |= ctx.edge_bits[static_cast<std::size_t>(i)];
                        w.chosen |= std::uint32_t{1} << i;
                    }
                w.dfs(static_cast<std::size_t>(split));
                for (int i = 0; i < split; ++i)
                    if ((code >> i) & 1) w.pop(i);
            }
        }
        for (auto& w : locals) workers.push_back(std::move(w));
#endif
    }

    Frac best{-1, 1};
    for (const auto& w : workers)
        if (frac_less(best, w.best)) best = w.best;
    // The seeds were real covers, so best is attained; collect exact ties.
    std::vector<CliqueCover> c0;
    for (const auto& w : workers)
        for (const auto& tie : w.ties)
            if (frac_equal(tie.value, best)) c0.push_back(cover_from_subset(ctx, tie.subset));
    for (auto& [cover, value] : seed_covers)
        if (frac_equal(value, best)) c0.push_back(std::move(cover));
    std::sort(c0.begin(), c0.end());
    c0.erase(std::unique(c0.begin(), c0.end()), c0.end());

    Eta0Result result;
    result.eta0 = Rational(BigInt(best.num), BigInt(best.den));
    result.c0 = std::move(c0);
    result.cover_family_size = count_proper_covers(g);
    if (result.c0.empty()) throw std::logic_error("eta0: empty argmax set");
    return result;
}

ThresholdReport classify_balance(const PatternGraph& g, const Rational& alpha,
                                 const AnalyzeOptions& options) {
    ThresholdReport report;
    report.h = g.vertex_count();
    report.e = g.edge_count();
    report.aut = automorphism_count(g);
    report.alpha = alpha;

    Eta0Result scan = eta0(g, alpha, options.scan, options.threads);
    report.eta0 = scan.eta0;
    report.cover_family_size = scan.cover_family_size;

    report.strictly_alpha_balanced = true;
    for (const CliqueCover& cover : scan.c0) {
        CoverVerdict verdict;
        verdict.cover = cover;
        verdict.sum_sizes = cover.sum_sizes();
        auto at_v = eta2_detail(cover, g.vertices(), alpha);
        verdict.eta2_at_v = at_v->value;
        verdict.boundary_fired = at_v->boundary_fired;
        Rational min_eta = at_v->value;
        verdict.verdict = BalanceVerdict::StrictlyBalanced;
        for (VertexMask s = 1; s <= g.vertices(); ++s) {
            auto detail = eta2_detail(cover, s, alpha);
            if (!detail) continue;
            verdict.boundary_fired |= detail->boundary_fired;
            verdict.eta2_table.emplace_back(s, detail->value);
            if (s == g.vertices()) continue;
            if (detail->value < min_eta) min_eta = detail->value;
            if (detail->value < verdict.eta2_at_v) {
                // a strict violation outranks any earlier equality witness
                if (verdict.verdict != BalanceVerdict::Unbalanced) {
                    verdict.verdict = BalanceVerdict::Unbalanced;
                    verdict.witness = s;
                }
            } else if (detail->value == verdict.eta2_at_v &&
                       verdict.verdict == BalanceVerdict::StrictlyBalanced) {
                verdict.verdict = BalanceVerdict::Neither;
                verdict.witness = s;
            }
        }
        verdict.eta1 = min_eta;
        if (verdict.verdict != BalanceVerdict::StrictlyBalanced)
            report.strictly_alpha_balanced = false;
        report.c0.push_back(std::move(verdict));
    }

    // Full per-cover table when the family is small enough to materialize.
    try {
        CoverEnumerationBudget enum_budget;
        enum_budget.max_covers = options.materialize_limit;
        enum_budget.max_subsets = std::min<std::uint64_t>(enum_budget.max_subsets,
                                                          options.scan.max_subsets);
        std::vector<CliqueCover> family = enumerate_proper_covers(g, enum_budget);
        std::vector<std::pair<CliqueCover, Rational>> table;
        table.reserve(family.size());
        for (auto& cover : family) {
            Rational value = eta1(g, cover, alpha);
            table.emplace_back(std::move(cover), value);
        }
        report.all_covers = std::move(table);
        report.cover_family_size = report.all_covers->size();
    } catch (const BudgetError&) {
        // keep the scan statistics only
    }

    report.regime = regime_from_eta0(report.eta0, alpha);
    report.kappa = kappa(g);
    report.er_strictly_balanced = is_strictly_balanced(g);
    return report;
}

RegimeDiagnostics regime_from_eta0(const Rational& eta0_value, const Rational& alpha) {
    RegimeDiagnostics regime;
    regime.eta0 = eta0_value;
    Rational gap = alpha - 2 * eta0_value;
    regime.mp2_vanishes = gap < 0;
    regime.asymptotically_edgeless = gap < -2;
    regime.asymptotically_complete = gap > 0;
    return regime;
}

RegimeDiagnostics regime_check(const PatternGraph& g, const Rational& alpha,
                               const ScanBudget& budget) {
    return regime_from_eta0(eta0(g, alpha, budget).eta0, alpha);
}

double lambda0_from_report(const ThresholdReport& report, double c) {
    double total = 0.0;
    for (const auto& verdict : report.c0) total += std::pow(c, verdict.sum_sizes);
    return total / static_cast<double>(report.aut);
}

double lambda0(const PatternGraph& g, const Rational& alpha, double c, const ScanBudget& budget) {
    Eta0Result scan = eta0(g, alpha, budget);
    double total = 0.0;
    for (const auto& cover : scan.c0) total += std::pow(c, cover.sum_sizes());
    return total / static_cast<double>(automorphism_count(g));
}

double psi(const CliqueCover& cover, VertexMask s, const ModelParams& params) {
    if (!s) throw std::invalid_argument("psi: empty S");
    RestrictedPair rp = restrict_cover(cover, s);
    double log_n = std::log(static_cast<double>(params.n));
    double log_p = std::log(params.p);
    int size_s = subset_size(s);
    auto log_monomial = [&](int card, int total) {
        return (size_s + to_double(params.alpha) * card) * log_n + total * log_p;
    };
    double log1 = log_monomial(rp.all_nonempty.card(), rp.all_nonempty.sum_sizes());
    double log2 = log_monomial(rp.size_ge2.card(), rp.size_ge2.sum_sizes());
    if (params.p_exponent) {
        // p = c n^{-eta}: exponents of n are exact rationals, log(c) breaks ties.
        const Rational& eta = *params.p_exponent;
        auto exponent = [&](int card, int total) {
            return Rational(size_s) + params.alpha * card - eta * total;
        };
        Rational e1 = exponent(rp.all_nonempty.card(), rp.all_nonempty.sum_sizes());
        Rational e2 = exponent(rp.size_ge2.card(), rp.size_ge2.sum_sizes());
        double log_c = std::log(params.c);
        double v1 = to_double(e1) * log_n + rp.all_nonempty.sum_sizes() * log_c;
        double v2 = to_double(e2) * log_n + rp.size_ge2.sum_sizes() * log_c;
        if (e1 != e2) return std::exp(e1 < e2 ? v1 : v2);
        return std::exp(std::min(v1, v2));
    }
    return std::exp(std::min(log1, log2));
}

double omega(const PatternGraph& g, const CliqueCover& cover, const ModelParams& params) {
    double best = std::numeric_limits<double>::infinity();
    for (VertexMask s = 1; s < g.vertices(); ++s) best = std::min(best, psi(cover, s, params));
    return best;
}

double phi(const PatternGraph& g, const Rational& alpha, double c, std::int64_t n,
           const ScanBudget& budget) {
    Eta0Result scan = eta0(g, alpha, budget);
    ModelParams params = ModelParams::from_threshold(n, alpha, c, scan.eta0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cover : scan.c0) best = std::min(best, omega(g, cover, params));
    return best;
}

namespace {

double log_m(const ModelParams& params) { return big_log(params.m); }

}  // namespace

double pi_predict(const CliqueCover& cover, const ModelParams& params) {
    double lm = log_m(params);
    double lp = std::log(params.p);
    double log_product = 0.0;
    int singletons = 0;
    for (VertexMask c : cover.cliques) {
        int k = subset_size(c);
        if (k == 1)
            ++singletons;
        else
            log_product += lm + k * lp;
    }
    double value = std::exp(log_product);
    if (singletons > 0) {
        double mp = std::exp(lm + lp);
        value *= std::pow(-std::expm1(-mp), singletons);
    }
    return value;
}

double pi_order(const CliqueCover& cover, const ModelParams& params) {
    double lm = log_m(params);
    double lp = std::log(params.p);
    int t = cover.size();
    int total = cover.sum_sizes();
    int t_prime = 0, total_prime = 0;
    for (VertexMask c : cover.cliques)
        if (subset_size(c) >= 2) {
            ++t_prime;
            total_prime += subset_size(c);
        }
    return std::exp(std::min(t * lm + total * lp, t_prime * lm + total_prime * lp));
}

double pi_predict_above(const PatternGraph& g, const CliqueCover& cover,
                        const ModelParams& params) {
    double lm = log_m(params);
    double lp = std::log(params.p);
    double mp2 = std::exp(lm + 2 * lp);
    int pairs = 0;
    double log_big = 0.0;
    for (VertexMask c : cover.cliques) {
        int k = subset_size(c);
        if (k == 2)
            ++pairs;
        else if (k >= 3)
            log_big += lm + k * lp;
    }
    int h = g.vertex_count();
    int all_pairs = h * (h - 1) / 2;
    double value = std::exp(log_big);
    value *= std::pow(-std::expm1(-mp2), pairs);
    value *= std::exp(-mp2 * (all_pairs - pairs));
    return value;
}

}  // namespace rigkit
