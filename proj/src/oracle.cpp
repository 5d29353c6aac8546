#include "rigkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rigkit/embed.hpp"
#include "rigkit/host_graph.hpp"

namespace rigkit {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;
using Wide = boost::multiprecision::cpp_bin_float_50;

template <typename Float>
Float pow_int(Float base, std::int64_t e) {
    Float result = 1;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// Kahan-compensated alternating inclusion-exclusion sum
//   sum over T subsets of [t] of (-1)^{t-|T|} (q0 + sum_{i in T} q_i)^m.
// Returns the sum and a bound on the accumulated rounding error.
template <typename Float>
std::pair<Float, Float> alternating_ie(const std::vector<double>& q, double q0, std::int64_t m) {
    int t = static_cast<int>(q.size());
    Float sum = 0, comp = 0, max_term = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
        Float base = q0;
        for (int i = 0; i < t; ++i)
            if ((mask >> i) & 1u) base += Float(q[static_cast<std::size_t>(i)]);
        Float term = pow_int(base, m);
        if (term > max_term) max_term = term;
        if ((t - std::popcount(mask)) & 1) term = -term;
        Float y = term - comp;
        Float volatile_sum = sum + y;
        comp = (volatile_sum - sum) - y;
        sum = volatile_sum;
    }
    Float eps = std::numeric_limits<Float>::epsilon();
    Float error = max_term * eps * Float(std::uint64_t{1} << t) * Float(m > 0 ? 64 : 1);
    return {sum, error};
}

template <typename Float>
bool ie_acceptable(const std::pair<Float, Float>& result) {
    using std::abs;
    return abs(result.first) >= Float(1000) * result.second;
}

double escalating_ie(const std::vector<double>& q, double q0, std::int64_t m) {
    auto d = alternating_ie<double>(q, q0, m);
    if (ie_acceptable(d)) return d.first;
    auto quad = alternating_ie<Quad>(q, q0, m);
    if (ie_acceptable(quad)) return quad.first.convert_to<double>();
    return alternating_ie<Wide>(q, q0, m).first.convert_to<double>();
}

double small_trace_weight(int h, double p) {
    // P(object touches <= 1 of the h copy vertices)
    return std::pow(1.0 - p, h) + h * p * std::pow(1.0 - p, h - 1);
}

}  // namespace

double exact_pi(const PatternGraph& g, const CliqueCover& cover, std::int64_t m, double p,
                const OracleBudget& budget) {
    if (!cover.is_proper()) throw std::invalid_argument("exact_pi: cover must be proper");
    if (cover.size() > budget.max_cover_size)
        throw BudgetError("exact_pi: cover has " + std::to_string(cover.size()) +
                          " cliques; inclusion-exclusion capped at " +
                          std::to_string(budget.max_cover_size));
    if (p < 0 || p > 1) throw std::invalid_argument("exact_pi: p must be in [0, 1]");
    if (m < cover.size()) return 0.0;  // disjoint nonempty families need m >= t
    int h = g.vertex_count();
    std::vector<double> q;
    double q_total = small_trace_weight(h, p);
    for (VertexMask c : cover.cliques) {
        int k = subset_size(c);
        q.push_back(std::pow(p, k) * std::pow(1.0 - p, h - k));
        q_total += q.back();
    }
    if (q_total > 1.0 + 1e-12) throw std::logic_error("exact_pi: trace weights exceed 1");
    return escalating_ie(q, small_trace_weight(h, p), m);
}

double exact_copy_induced_probability(const PatternGraph& g, std::int64_t m, double p) {
    int h = g.vertex_count();
    int e = g.edge_count();
    if (e > 20)
        throw BudgetError("exact_copy_induced_probability: 2^" + std::to_string(e) +
                          " edge subsets exceed the enumeration budget");
    // q_F = P(trace is a clique of H0 with all edges inside F)
    auto edges = g.edges();
    std::vector<double> trace_weight(static_cast<std::size_t>(1) << h);
    for (VertexMask a = 0; a < (VertexMask{1} << h); ++a)
        trace_weight[a] = std::pow(p, subset_size(a)) * std::pow(1.0 - p, h - subset_size(a));

    Wide sum = 0;
    for (std::uint32_t f = 0; f < (std::uint32_t{1} << e); ++f) {
        double qf = 0;
        for (VertexMask a = 0; a < (VertexMask{1} << h); ++a) {
            if (!g.is_clique(a) && subset_size(a) >= 2) continue;
            bool inside = true;
            for (int u = 0; u < h && inside; ++u) {
                if (!((a >> u) & 1u)) continue;
                for (int v = u + 1; v < h && inside; ++v) {
                    if (!((a >> v) & 1u)) continue;
                    if (!g.adjacent(u, v)) continue;
                    if (!((f >> g.edge_index(u, v)) & 1u)) inside = false;
                }
            }
            if (inside) qf += trace_weight[a];
        }
        Wide term = pow_int(Wide(qf), m);
        if ((e - std::popcount(f)) & 1) term = -term;
        sum += term;
    }
    return sum.convert_to<double>();
}

double exact_mean(const PatternGraph& g, std::int64_t n, std::int64_t m, double p,
                  const CoverEnumerationBudget& cover_budget, const OracleBudget& budget) {
    if (p == 0.0) return 0.0;
    double total = 0.0;
    for (const CliqueCover& cover : enumerate_proper_covers(g, cover_budget))
        total += exact_pi(g, cover, m, p, budget);
    return count_pattern_copies(n, g).convert_to<double>() * total;
}

namespace {

struct DistributionEnumerator {
    const PatternGraph* pattern;
    std::int64_t n;
    int edge_slots = 0;
    std::vector<std::pair<std::uint64_t, double>> categories;  // edge mask over pairs, weight
    double small_weight = 0.0;
    std::unordered_map<std::uint64_t, std::uint64_t> count_cache;
    std::vector<double> pmf;
    std::vector<std::pair<std::int64_t, std::int64_t>> pair_of_slot;

    std::uint64_t copies_for(std::uint64_t edge_mask) {
        auto it = count_cache.find(edge_mask);
        if (it != count_cache.end()) return it->second;
        std::vector<std::pair<std::int64_t, std::int64_t>> edges;
        for (int s = 0; s < edge_slots; ++s)
            if ((edge_mask >> s) & 1u) edges.push_back(pair_of_slot[static_cast<std::size_t>(s)]);
        HostGraph host = HostGraph::from_edges(n, std::move(edges));
        std::uint64_t copies = count_induced_copies(host, *pattern);
        count_cache.emplace(edge_mask, copies);
        return copies;
    }

    void record(std::uint64_t edge_mask, double weight) {
        std::uint64_t copies = copies_for(edge_mask);
        if (pmf.size() <= copies) pmf.resize(copies + 1, 0.0);
        pmf[copies] += weight;
    }

    // Multisets over categories: count objects per category, small-trace
    // objects absorb the remainder.
    void descend(std::size_t cat, std::int64_t remaining, double weight, std::uint64_t edge_mask) {
        if (cat == categories.size()) {
            record(edge_mask, weight * std::pow(small_weight, static_cast<double>(remaining)));
            return;
        }
        double binom = 1.0;
        for (std::int64_t k = 0; k <= remaining; ++k) {
            if (k > 0) binom *= static_cast<double>(remaining - k + 1) / static_cast<double>(k);
            double w = weight * binom * std::pow(categories[cat].second, static_cast<double>(k));
            descend(cat + 1, remaining - k, w,
                    k > 0 ? (edge_mask | categories[cat].first) : edge_mask);
        }
    }
};

}  // namespace

std::vector<double> exact_distribution(const PatternGraph& g, std::int64_t n, std::int64_t m,
                                       double p, const OracleBudget& budget) {
    if (n < 1 || m < 0) throw std::invalid_argument("exact_distribution: bad dimensions");
    double log2_assignments = static_cast<double>(n) * static_cast<double>(m);
    if (log2_assignments > std::log2(static_cast<double>(budget.max_weighted_assignments)))
        throw BudgetError("exact_distribution: (2^" + std::to_string(n) + ")^" +
                          std::to_string(m) + " weighted assignments exceed the budget of " +
                          std::to_string(budget.max_weighted_assignments));
    DistributionEnumerator en;
    en.pattern = &g;
    en.n = n;
    for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = u + 1; v < n; ++v) {
            en.pair_of_slot.emplace_back(u, v);
            ++en.edge_slots;
        }
    en.small_weight = std::pow(1.0 - p, n) + n * p * std::pow(1.0 - p, n - 1);
    for (std::uint64_t trace = 0; trace < (std::uint64_t{1} << n); ++trace) {
        int size = std::popcount(trace);
        if (size < 2) continue;
        std::uint64_t edge_mask = 0;
        int slot = 0;
        for (std::int64_t u = 0; u < n; ++u)
            for (std::int64_t v = u + 1; v < n; ++v, ++slot)
                if (((trace >> u) & 1u) && ((trace >> v) & 1u))
                    edge_mask |= std::uint64_t{1} << slot;
        double weight = std::pow(p, size) * std::pow(1.0 - p, n - size);
        en.categories.emplace_back(edge_mask, weight);
    }
    en.descend(0, m, 1.0, 0);
    while (en.pmf.size() > 1 && en.pmf.back() == 0.0) en.pmf.pop_back();
    if (en.pmf.empty()) en.pmf.push_back(1.0);
    return en.pmf;
}

namespace {

// Event check for exact_joint method (b): given the multiset of traces on
// the union vertex set, decide whether both covers are realized exactly and
// no stray clique appears.
struct JointEvent {
    VertexMask v1 = 0, v2 = 0;
    std::vector<VertexMask> c1, c2;  // lifted, sorted
    const PatternGraph* union_graph = nullptr;

    bool admits(VertexMask trace, std::uint64_t& witness_bits) const {
        if (subset_size(trace) >= 2 && !union_graph->is_clique(trace)) return false;
        VertexMask r1 = trace & v1;
        VertexMask r2 = trace & v2;
        if (subset_size(r1) >= 2) {
            auto it = std::lower_bound(c1.begin(), c1.end(), r1);
            if (it == c1.end() || *it != r1) return false;
            witness_bits |= std::uint64_t{1} << (it - c1.begin());
        }
        if (subset_size(r2) >= 2) {
            auto it = std::lower_bound(c2.begin(), c2.end(), r2);
            if (it == c2.end() || *it != r2) return false;
            witness_bits |= std::uint64_t{1} << (c1.size() + (it - c2.begin()));
        }
        return true;
    }
};

struct JointEnumerator {
    JointEvent event;
    int v = 0;  // union vertex count
    std::vector<std::pair<VertexMask, double>> categories;
    std::uint64_t need = 0;
    double total = 0.0;

    void descend(std::size_t cat, std::int64_t remaining, double weight,
                 std::uint64_t witness_bits) {
        if (cat == categories.size()) {
            if (remaining == 0 && witness_bits == need) total += weight;
            return;
        }
        // Category counts follow the multinomial; traces that violate the
        // event contribute only through count zero.
        std::uint64_t bits = witness_bits;
        bool allowed = event.admits(categories[cat].first, bits);
        descend(cat + 1, remaining, weight, witness_bits);
        if (!allowed) return;
        double binom = 1.0;
        for (std::int64_t k = 1; k <= remaining; ++k) {
            binom *= static_cast<double>(remaining - k + 1) / static_cast<double>(k);
            descend(cat + 1, remaining - k,
                    weight * binom * std::pow(categories[cat].second, static_cast<double>(k)),
                    bits);
        }
    }
};

}  // namespace

JointOracle exact_joint(const PatternGraph& g1, const CliqueCover& c1, const PatternGraph& g2,
                        const CliqueCover& c2, const std::vector<std::pair<int, int>>& overlap,
                        std::int64_t m, double p, const OracleBudget& budget) {
    JointOracle out{0.0, 0.0, combine_covers(g1, c1, g2, c2, overlap)};
    for (const CliqueCover& cover : out.combined.covers)
        out.via_combined_covers += exact_pi(out.combined.union_graph, cover, m, p, budget);

    int v = out.combined.union_graph.vertex_count();
    double log2_assignments = static_cast<double>(v) * static_cast<double>(m);
    if (log2_assignments > std::log2(static_cast<double>(budget.max_weighted_assignments)))
        throw BudgetError("exact_joint: (2^" + std::to_string(v) + ")^" + std::to_string(m) +
                          " weighted assignments exceed the budget");

    JointEnumerator en;
    en.v = v;
    en.event.v1 = out.combined.v1_mask;
    en.event.v2 = out.combined.v2_mask;
    en.event.union_graph = &out.combined.union_graph;
    auto lift = [](const CliqueCover& c, const std::vector<int>& map) {
        std::vector<VertexMask> lifted;
        for (VertexMask mask : c.cliques) {
            VertexMask m2 = 0;
            for (int vv = 0; vv < kMaxPatternVertices; ++vv)
                if ((mask >> vv) & 1u) m2 |= VertexMask{1} << map[vv];
            lifted.push_back(m2);
        }
        std::sort(lifted.begin(), lifted.end());
        return lifted;
    };
    en.event.c1 = lift(c1, out.combined.g1_to_union);
    en.event.c2 = lift(c2, out.combined.g2_to_union);
    if (en.event.c1.size() + en.event.c2.size() > 62)
        throw BudgetError("exact_joint: too many cover cliques to track witnesses");
    en.need = (std::uint64_t{1} << (en.event.c1.size() + en.event.c2.size())) - 1;
    for (VertexMask trace = 0; trace < (VertexMask{1} << v); ++trace) {
        double weight = std::pow(p, subset_size(trace)) * std::pow(1.0 - p, v - subset_size(trace));
        en.categories.emplace_back(trace, weight);
    }
    en.descend(0, m, 1.0, 0);
    out.via_enumeration = en.total;
    return out;
}

PatternJointOracle exact_pattern_joint(const PatternGraph& g, const CliqueCover& cover,
                                       std::int64_t m, double p, const std::vector<int>& counts) {
    if (counts.size() != cover.cliques.size())
        throw std::invalid_argument("exact_pattern_joint: one count per clique required");
    int h = g.vertex_count();
    std::int64_t total_counts = 0;
    for (int a : counts) {
        if (a < 0) throw std::invalid_argument("exact_pattern_joint: negative count");
        total_counts += a;
    }
    if (total_counts > m) throw std::invalid_argument("exact_pattern_joint: counts exceed m");

    double sum_pi = 0.0;
    std::vector<double> cell(cover.cliques.size());
    for (std::size_t i = 0; i < cover.cliques.size(); ++i) {
        int k = subset_size(cover.cliques[i]);
        cell[i] = std::pow(p, k) * std::pow(1.0 - p, h - k);
        sum_pi += cell[i];
    }
    double log_prob = std::lgamma(static_cast<double>(m) + 1.0) -
                      std::lgamma(static_cast<double>(m - total_counts) + 1.0) +
                      static_cast<double>(m - total_counts) * std::log1p(-sum_pi);
    double log_poisson = 0.0;
    for (std::size_t i = 0; i < cover.cliques.size(); ++i) {
        int k = subset_size(cover.cliques[i]);
        double mean = static_cast<double>(m) * std::pow(p, k);
        if (counts[i] > 0) {
            log_prob += counts[i] * std::log(cell[i]) - std::lgamma(counts[i] + 1.0);
            log_poisson += counts[i] * std::log(mean) - std::lgamma(counts[i] + 1.0);
        }
        log_poisson -= mean;
    }
    PatternJointOracle out;
    out.exact = std::exp(log_prob);
    out.product_poisson = std::exp(log_poisson);
    return out;
}

}  // namespace rigkit
