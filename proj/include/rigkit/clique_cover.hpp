#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigkit/errors.hpp"
#include "rigkit/pattern.hpp"

namespace rigkit {

// A set of vertex subsets of a pattern, each inducing a clique, jointly
// covering every edge. Stored duplicate-free and sorted (canonical form).
// Proper covers have every member of size >= 2; restricted covers arising
// elsewhere may carry singletons, so the type itself does not forbid them.
struct CliqueCover {
    std::vector<VertexMask> cliques;

    CliqueCover() = default;
    explicit CliqueCover(std::vector<VertexMask> parts);

    int size() const { return static_cast<int>(cliques.size()); }
    int sum_sizes() const;
    bool is_proper() const;

    bool operator==(const CliqueCover& other) const { return cliques == other.cliques; }
    bool operator<(const CliqueCover& other) const { return cliques < other.cliques; }

    std::string to_string() const;  // e.g. {123, 12} with 1-indexed digits
};

// The multisets C[S] (all restrictions of size >= 1, with multiplicity) and
// C'[S] (size >= 2 only).
struct RestrictedCover {
    std::vector<VertexMask> parts;  // sorted, duplicates kept
    int min_size = 1;               // 1 for C[S], 2 for C'[S]

    int card() const { return static_cast<int>(parts.size()); }
    int sum_sizes() const;
};

struct RestrictedPair {
    RestrictedCover all_nonempty;  // C[S]
    RestrictedCover size_ge2;      // C'[S]
};

// All vertex subsets of size >= 2 inducing cliques, ascending as masks.
std::vector<VertexMask> enumerate_cliques(const PatternGraph& g);

// Cover checker, independent of any enumerator: every member induces
// a clique, every edge is covered, members are distinct, and (optionally)
// every member has size >= 2.
bool is_valid_cover(const PatternGraph& g, const CliqueCover& cover, bool require_proper = true);

struct CoverEnumerationBudget {
    // 2^#cliques may not exceed this many subsets, and the materialized
    // family may not exceed max_covers.
    std::uint64_t max_subsets = std::uint64_t{1} << 22;
    std::uint64_t max_covers = 4'000'000;
};

// The full family C(H0) of proper clique covers, including redundant covers
// (supersets of covers): every cover is a distinct disjoint inducing
// event, so completeness requires them. Refuses with BudgetError past the budget.
std::vector<CliqueCover> enumerate_proper_covers(const PatternGraph& g,
                                                 const CoverEnumerationBudget& budget = {});

// |C(H0)| without materializing: inclusion-exclusion over covered edge
// subsets. nullopt when 2^e is out of reach (e > 24).
std::optional<std::uint64_t> count_proper_covers(const PatternGraph& g);

// Restriction of a cover to nonempty S.
RestrictedPair restrict_cover(const CliqueCover& cover, VertexMask s);

// The combined-cover family C1+C2 on V(G1 u G2): all proper covers C of the
// union graph whose size->=2 restrictions to V(G1) and V(G2) realize exactly
// C1 and C2. G2's vertex v is identified with G1's vertex u for each pair
// (u, v) in overlap; the shared part must be induced in both graphs.
struct CombinedCovers {
    PatternGraph union_graph;
    std::vector<int> g1_to_union;  // vertex maps into union labels
    std::vector<int> g2_to_union;
    VertexMask v1_mask = 0;
    VertexMask v2_mask = 0;
    std::vector<CliqueCover> covers;  // on union labels
};

CombinedCovers combine_covers(const PatternGraph& g1, const CliqueCover& c1,
                              const PatternGraph& g2, const CliqueCover& c2,
                              const std::vector<std::pair<int, int>>& overlap);

}  // namespace rigkit
