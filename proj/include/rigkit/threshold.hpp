#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigkit/clique_cover.hpp"
#include "rigkit/pattern.hpp"
#include "rigkit/rational.hpp"

namespace rigkit {

// Concrete model instance G(n, m, p) with m = floor(n^alpha). When p comes
// from p = c n^{-eta}, the exact exponent is kept so monomial comparisons can
// be decided by rational arithmetic with a log(c) tiebreak.
struct ModelParams {
    std::int64_t n = 0;
    Rational alpha;
    double c = 1.0;
    BigInt m;
    double m_real = 0.0;
    double p = 0.0;
    std::optional<Rational> p_exponent;  // eta with p = c n^{-eta}
    bool p_clamped = false;

    static ModelParams from_threshold(std::int64_t n, const Rational& alpha, double c,
                                      const Rational& eta);
    static ModelParams with_explicit_p(std::int64_t n, const Rational& alpha, double p);

    double mp2() const { return m_real * p * p; }
    std::int64_t m_int64() const;
};

// eta2(H0, C, S): the exponent at which psi(H0, C, S) = 1. Picks the
// restricted-cover variant by the alpha branch rule; equivalently the
// smaller of the two monomial roots. S must
// meet at least one clique of the cover (otherwise the restricted event is
// unconstrained and no finite exponent exists).
struct Eta2Detail {
    Rational value;
    bool used_prime_branch = false;
    bool boundary_fired = false;  // alpha == |S| / (sum C[S] - |C[S]|)
};

std::optional<Eta2Detail> eta2_detail(const CliqueCover& cover, VertexMask s,
                                      const Rational& alpha);
Rational eta2(const PatternGraph& g, const CliqueCover& cover, VertexMask s,
              const Rational& alpha);

// min over nonempty S (including V) of eta2.
Rational eta1(const PatternGraph& g, const CliqueCover& cover, const Rational& alpha);

struct ScanBudget {
    std::uint64_t max_subsets = std::uint64_t{1} << 26;  // cover-family scan
    std::uint64_t max_ties = 1 << 12;                    // size of the argmax set
};

struct Eta0Result {
    Rational eta0;
    std::vector<CliqueCover> c0;  // argmax covers, canonical order
    std::optional<std::uint64_t> cover_family_size;
};

// eta0 = max over all proper covers of eta1, with the argmax set C0. The
// family is scanned, not materialized, so clique-rich patterns stay feasible.
Eta0Result eta0(const PatternGraph& g, const Rational& alpha, const ScanBudget& budget = {},
                int threads = 0);

enum class BalanceVerdict { StrictlyBalanced, Unbalanced, Neither };

struct CoverVerdict {
    CliqueCover cover;
    Rational eta1;
    Rational eta2_at_v;
    int sum_sizes = 0;
    BalanceVerdict verdict = BalanceVerdict::StrictlyBalanced;
    std::optional<VertexMask> witness;  // S with eta2(S) <= eta2(V), if any
    bool boundary_fired = false;
    std::vector<std::pair<VertexMask, Rational>> eta2_table;  // defined S only
};

struct RegimeDiagnostics {
    Rational eta0;
    bool mp2_vanishes = false;            // alpha < 2 eta0
    bool asymptotically_edgeless = false; // alpha - 2 eta0 < -2
    bool asymptotically_complete = false; // alpha - 2 eta0 > 0
};

struct ThresholdReport {
    int h = 0;
    int e = 0;
    std::uint64_t aut = 0;
    Rational alpha;
    Rational eta0;
    std::vector<CoverVerdict> c0;
    bool strictly_alpha_balanced = false;  // all covers in C0 strict
    std::optional<std::uint64_t> cover_family_size;
    // eta1 for every proper cover, when the family is small enough to list.
    std::optional<std::vector<std::pair<CliqueCover, Rational>>> all_covers;
    RegimeDiagnostics regime;
    std::optional<Rational> kappa;
    bool er_strictly_balanced = false;
};

struct AnalyzeOptions {
    ScanBudget scan;
    std::uint64_t materialize_limit = 20000;  // list per-cover eta1 up to this family size
    int threads = 0;                          // 0 = all available
};

ThresholdReport classify_balance(const PatternGraph& g, const Rational& alpha,
                                 const AnalyzeOptions& options = {});

// lambda0 = (1/|aut|) sum over C0 of c^{sum C}.
double lambda0(const PatternGraph& g, const Rational& alpha, double c,
               const ScanBudget& budget = {});
double lambda0_from_report(const ThresholdReport& report, double c);

RegimeDiagnostics regime_check(const PatternGraph& g, const Rational& alpha,
                               const ScanBudget& budget = {});
RegimeDiagnostics regime_from_eta0(const Rational& eta0_value, const Rational& alpha);

// psi = min{ n^{|S| + alpha |C[S]|} p^{sum C[S]}, n^{|S| + alpha |C'[S]|} p^{sum C'[S]} },
// evaluated in log space. An empty C'[S] makes the second monomial n^{|S|}
// (empty products are 1).
double psi(const CliqueCover& cover, VertexMask s, const ModelParams& params);

// omega = min over proper nonempty S of psi.
double omega(const PatternGraph& g, const CliqueCover& cover, const ModelParams& params);

// phi = min over C0 of omega, at p = c n^{-eta0}.
double phi(const PatternGraph& g, const Rational& alpha, double c, std::int64_t n,
           const ScanBudget& budget = {});

// Asymptotic predictors. pi_predict is the probability product with singleton
// cliques contributing 1 - e^{-mp}; pi_order is the two-monomial order
// estimate. pi_predict_above is the above-threshold variant.
double pi_predict(const CliqueCover& cover, const ModelParams& params);
double pi_order(const CliqueCover& cover, const ModelParams& params);
double pi_predict_above(const PatternGraph& g, const CliqueCover& cover,
                        const ModelParams& params);

constexpr double kDefaultMp2SmallThreshold = 0.01;

}  // namespace rigkit
