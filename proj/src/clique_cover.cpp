#include "rigkit/clique_cover.hpp"

#include <algorithm>
#include <set>

namespace rigkit {

CliqueCover::CliqueCover(std::vector<VertexMask> parts) : cliques(std::move(parts)) {
    std::sort(cliques.begin(), cliques.end());
    auto dup = std::adjacent_find(cliques.begin(), cliques.end());
    if (dup != cliques.end()) throw std::invalid_argument("clique cover: duplicate member");
    for (VertexMask c : cliques)
        if (!c) throw std::invalid_argument("clique cover: empty member");
}

int CliqueCover::sum_sizes() const {
    int total = 0;
    for (VertexMask c : cliques) total += subset_size(c);
    return total;
}

bool CliqueCover::is_proper() const {
    for (VertexMask c : cliques)
        if (subset_size(c) < 2) return false;
    return !cliques.empty();
}

std::string CliqueCover::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        if (i) out += ",";
        for (int v = 0; v < kMaxPatternVertices; ++v)
            if ((cliques[i] >> v) & 1u) out += std::to_string(v + 1);
    }
    return out + "}";
}

int RestrictedCover::sum_sizes() const {
    int total = 0;
    for (VertexMask c : parts) total += subset_size(c);
    return total;
}

std::vector<VertexMask> enumerate_cliques(const PatternGraph& g) {
    std::vector<VertexMask> out;
    VertexMask all = g.vertices();
    for (VertexMask s = 1; s <= all; ++s)
        if (subset_size(s) >= 2 && g.is_clique(s)) out.push_back(s);
    return out;
}

bool is_valid_cover(const PatternGraph& g, const CliqueCover& cover, bool require_proper) {
    std::set<VertexMask> seen;
    for (VertexMask c : cover.cliques) {
        if (!c || (c & ~g.vertices())) return false;
        if (require_proper && subset_size(c) < 2) return false;
        if (!g.is_clique(c)) return false;
        if (!seen.insert(c).second) return false;
    }
    for (auto [u, v] : g.edges()) {
        VertexMask pair = (VertexMask{1} << u) | (VertexMask{1} << v);
        bool covered = false;
        for (VertexMask c : cover.cliques)
            if ((c & pair) == pair) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

namespace {

void cover_dfs(const std::vector<VertexMask>& cliques, const std::vector<std::uint32_t>& edge_bits,
               const std::vector<std::uint32_t>& suffix_union, std::uint32_t full,
               std::size_t index, std::uint32_t covered, std::vector<VertexMask>& chosen,
               std::uint64_t max_covers, std::vector<CliqueCover>& out) {
    if ((covered | suffix_union[index]) != full) return;  // cannot complete coverage
    if (index == cliques.size()) {
        if (covered == full) {
            if (out.size() >= max_covers)
                throw BudgetError("proper cover family exceeds materialization budget");
            out.emplace_back(chosen);
        }
        return;
    }
    cover_dfs(cliques, edge_bits, suffix_union, full, index + 1, covered, chosen, max_covers, out);
    chosen.push_back(cliques[index]);
    cover_dfs(cliques, edge_bits, suffix_union, full, index + 1, covered | edge_bits[index], chosen,
              max_covers, out);
    chosen.pop_back();
}

}  // namespace

std::vector<CliqueCover> enumerate_proper_covers(const PatternGraph& g,
                                                 const CoverEnumerationBudget& budget) {
    std::vector<VertexMask> cliques = enumerate_cliques(g);
    if (cliques.size() >= 63 ||
        (std::uint64_t{1} << cliques.size()) > budget.max_subsets)
        throw BudgetError("pattern has " + std::to_string(cliques.size()) +
                          " cliques; 2^" + std::to_string(cliques.size()) +
                          " cover candidates exceed the enumeration budget of " +
                          std::to_string(budget.max_subsets) + " subsets");
    std::vector<std::uint32_t> edge_bits(cliques.size());
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        std::uint32_t bits = 0;
        for (auto [u, v] : g.edges())
            if (((cliques[i] >> u) & 1u) && ((cliques[i] >> v) & 1u))
                bits |= std::uint32_t{1} << g.edge_index(u, v);
        edge_bits[i] = bits;
    }
    std::uint32_t full = (g.edge_count() == 32) ? ~std::uint32_t{0}
                                                : ((std::uint32_t{1} << g.edge_count()) - 1);
    std::vector<std::uint32_t> suffix_union(cliques.size() + 1, 0);
    for (std::size_t i = cliques.size(); i-- > 0;)
        suffix_union[i] = suffix_union[i + 1] | edge_bits[i];

    std::vector<CliqueCover> out;
    std::vector<VertexMask> chosen;
    cover_dfs(cliques, edge_bits, suffix_union, full, 0, 0, chosen, budget.max_covers, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint64_t> count_proper_covers(const PatternGraph& g) {
    int e = g.edge_count();
    if (e > 24) return std::nullopt;
    std::vector<VertexMask> cliques = enumerate_cliques(g);
    if (cliques.size() >= 63) return std::nullopt;
    std::vector<std::uint32_t> edge_bits(cliques.size());
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        std::uint32_t bits = 0;
        for (auto [u, v] : g.edges())
            if (((cliques[i] >> u) & 1u) && ((cliques[i] >> v) & 1u))
                bits |= std::uint32_t{1} << g.edge_index(u, v);
        edge_bits[i] = bits;
    }
    // Subsets covering exactly E: sum over F of (-1)^{|E \ F|} 2^{#cliques inside F}.
    __int128 total = 0;
    for (std::uint32_t f = 0; f < (std::uint32_t{1} << e); ++f) {
        int inside = 0;
        for (std::uint32_t bits : edge_bits)
            if ((bits & ~f) == 0) ++inside;
        __int128 term = static_cast<__int128>(1) << inside;
        total += ((e - std::popcount(f)) & 1) ? -term : term;
    }
    return static_cast<std::uint64_t>(total);
}

RestrictedPair restrict_cover(const CliqueCover& cover, VertexMask s) {
    if (!s) throw std::invalid_argument("restrict_cover: empty S");
    RestrictedPair out;
    out.all_nonempty.min_size = 1;
    out.size_ge2.min_size = 2;
    for (VertexMask c : cover.cliques) {
        VertexMask r = c & s;
        int k = subset_size(r);
        if (k >= 1) out.all_nonempty.parts.push_back(r);
        if (k >= 2) out.size_ge2.parts.push_back(r);
    }
    std::sort(out.all_nonempty.parts.begin(), out.all_nonempty.parts.end());
    std::sort(out.size_ge2.parts.begin(), out.size_ge2.parts.end());
    return out;
}

CombinedCovers combine_covers(const PatternGraph& g1, const CliqueCover& c1,
                              const PatternGraph& g2, const CliqueCover& c2,
                              const std::vector<std::pair<int, int>>& overlap) {
    if (!c1.is_proper() || !c2.is_proper())
        throw std::invalid_argument("combine_covers: covers must be proper");
    if (!is_valid_cover(g1, c1) || !is_valid_cover(g2, c2))
        throw std::invalid_argument("combine_covers: input is not a clique cover of its graph");

    int h1 = g1.vertex_count(), h2 = g2.vertex_count();
    std::vector<int> map2(h2, -1);
    std::vector<int> map1_partner(h1, -1);
    for (auto [u, v] : overlap) {
        if (u < 0 || u >= h1 || v < 0 || v >= h2)
            throw std::invalid_argument("combine_covers: overlap vertex out of range");
        if (map1_partner[u] != -1 || map2[v] != -1)
            throw std::invalid_argument("combine_covers: overlap identification not injective");
        map1_partner[u] = v;
        map2[v] = u;
    }
    // Shared part must look the same from both sides (induced in both).
    for (auto [u1, v1] : overlap)
        for (auto [u2, v2] : overlap)
            if (g1.adjacent(u1, u2) != g2.adjacent(v1, v2))
                throw std::invalid_argument("combine_covers: overlap is not induced in both graphs");

    std::vector<int> g1_to_union(static_cast<std::size_t>(h1));
    std::vector<int> g2_to_union(static_cast<std::size_t>(h2));
    for (int u = 0; u < h1; ++u) g1_to_union[static_cast<std::size_t>(u)] = u;
    int next = h1;
    for (int v = 0; v < h2; ++v)
        g2_to_union[static_cast<std::size_t>(v)] = (map2[v] >= 0) ? map2[v] : next++;
    if (next > kMaxPatternVertices)
        throw BudgetError("combine_covers: union graph exceeds the pattern vertex cap");

    std::vector<std::pair<int, int>> union_edges;
    for (auto [u, v] : g1.edges()) union_edges.emplace_back(u, v);
    for (auto [u, v] : g2.edges())
        union_edges.emplace_back(g2_to_union[static_cast<std::size_t>(u)],
                                 g2_to_union[static_cast<std::size_t>(v)]);
    CombinedCovers result{PatternGraph(next, union_edges), std::move(g1_to_union),
                          std::move(g2_to_union), 0, 0, {}};
    for (int u = 0; u < h1; ++u) result.v1_mask |= VertexMask{1} << u;
    for (int v = 0; v < h2; ++v) result.v2_mask |= VertexMask{1} << result.g2_to_union[v];

    auto lift = [](const CliqueCover& c, const std::vector<int>& map) {
        std::vector<VertexMask> lifted;
        for (VertexMask mask : c.cliques) {
            VertexMask m = 0;
            for (int v = 0; v < kMaxPatternVertices; ++v)
                if ((mask >> v) & 1u) m |= VertexMask{1} << map[v];
            lifted.push_back(m);
        }
        std::sort(lifted.begin(), lifted.end());
        return lifted;
    };
    std::vector<VertexMask> lifted1 = lift(c1, result.g1_to_union);
    std::vector<VertexMask> lifted2 = lift(c2, result.g2_to_union);

    // Candidate members are the lifted cliques of both covers; under the
    // requirement that every member is a clique of the union graph a member
    // can never be a new subset (a cross pair between V1\V2 and V2\V1 is a
    // non-edge), so C1+C2 is exactly the family of candidate subsets that
    //   (a) restrict to a C1 member or <= 1 vertex on V1, same on V2, and
    //   (b) realize every C1 member and every C2 member as a restriction.
    std::vector<VertexMask> candidates = lifted1;
    candidates.insert(candidates.end(), lifted2.begin(), lifted2.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto find_index = [](const std::vector<VertexMask>& list, VertexMask m) {
        auto it = std::lower_bound(list.begin(), list.end(), m);
        return (it != list.end() && *it == m) ? static_cast<int>(it - list.begin()) : -1;
    };

    int r = static_cast<int>(lifted1.size());
    int s = static_cast<int>(lifted2.size());
    std::vector<std::uint64_t> witness_bits;  // C1 indices in low bits, C2 shifted by r
    std::vector<VertexMask> usable;
    for (VertexMask cand : candidates) {
        VertexMask r1 = cand & result.v1_mask;
        VertexMask r2 = cand & result.v2_mask;
        int i1 = (subset_size(r1) >= 2) ? find_index(lifted1, r1) : -2;
        int i2 = (subset_size(r2) >= 2) ? find_index(lifted2, r2) : -2;
        if (i1 == -1 || i2 == -1) continue;  // restriction clashes with a cover
        std::uint64_t bits = 0;
        if (i1 >= 0) bits |= std::uint64_t{1} << i1;
        if (i2 >= 0) bits |= std::uint64_t{1} << (r + i2);
        usable.push_back(cand);
        witness_bits.push_back(bits);
    }
    if (usable.size() > 24)
        throw BudgetError("combine_covers: too many candidate cliques to enumerate");

    std::uint64_t need = ((r + s) == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << (r + s)) - 1);
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << usable.size()); ++pick) {
        std::uint64_t have = 0;
        for (std::uint64_t left = pick; left;) {
            int i = std::countr_zero(left);
            left &= left - 1;
            have |= witness_bits[static_cast<std::size_t>(i)];
        }
        if (have != need) continue;
        std::vector<VertexMask> members;
        for (std::uint64_t left = pick; left;) {
            int i = std::countr_zero(left);
            left &= left - 1;
            members.push_back(usable[static_cast<std::size_t>(i)]);
        }
        result.covers.emplace_back(std::move(members));
    }
    std::sort(result.covers.begin(), result.covers.end());
    return result;
}

}  // namespace rigkit
