#pragma once

#include <cstdint>
#include <vector>

#include "rigkit/clique_cover.hpp"
#include "rigkit/pattern.hpp"

namespace rigkit {

struct OracleBudget {
    // exact_distribution / exact_joint enumerate (2^v)^m weighted assignments.
    std::uint64_t max_weighted_assignments = std::uint64_t{1} << 24;
    int max_cover_size = 20;  // 2^t inclusion-exclusion terms
};

// Exact probability that a fixed copy of H0 is induced by the given proper
// cover: inclusion-exclusion over which cover cliques are realized, with
// q_i = p^{|C_i|}(1-p)^{h-|C_i|} and q_0 the weight of traces of size <= 1.
// The alternating sum nearly cancels at small p; evaluation escalates from
// compensated double summation to 128-bit and wider floats as needed.
double exact_pi(const PatternGraph& g, const CliqueCover& cover, std::int64_t m, double p,
                const OracleBudget& budget = {});

// Exact probability that a fixed copy of H0 appears as an induced subgraph,
// by inclusion-exclusion over covered edge subsets. Independent of the cover
// machinery; the cover-family sum of exact_pi must reproduce it.
double exact_copy_induced_probability(const PatternGraph& g, std::int64_t m, double p);

// E(X) = N_n * sum over the proper cover family of exact_pi.
double exact_mean(const PatternGraph& g, std::int64_t n, std::int64_t m, double p,
                  const CoverEnumerationBudget& cover_budget = {},
                  const OracleBudget& budget = {});

// Exact pmf of the induced-copy count at tiny scale, by enumerating the
// multiset of object traces on [n].
std::vector<double> exact_distribution(const PatternGraph& g, std::int64_t n, std::int64_t m,
                                       double p, const OracleBudget& budget = {});

// E[X(G1,C1) X(G2,C2)]-style joint for the combined-cover identity, computed
// two ways: (a) sum of exact_pi over combine_covers on the union graph, and
// (b) direct enumeration over object traces on V(G1 u G2) of the event that
// both covers are realized and every size->=2 trace is a clique of the union.
struct JointOracle {
    double via_combined_covers = 0.0;
    double via_enumeration = 0.0;
    CombinedCovers combined;
};

JointOracle exact_joint(const PatternGraph& g1, const CliqueCover& c1, const PatternGraph& g2,
                        const CliqueCover& c2, const std::vector<std::pair<int, int>>& overlap,
                        std::int64_t m, double p, const OracleBudget& budget = {});

// P(N_i = a_i for all i) exactly (multinomial over object pattern cells)
// next to the product-Poisson reference. Cliques of size 1 are allowed.
struct PatternJointOracle {
    double exact = 0.0;
    double product_poisson = 0.0;
};

PatternJointOracle exact_pattern_joint(const PatternGraph& g, const CliqueCover& cover,
                                       std::int64_t m, double p, const std::vector<int>& counts);

}  // namespace rigkit
