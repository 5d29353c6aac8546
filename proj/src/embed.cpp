#include "rigkit/embed.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rigkit {

namespace {

// Static search plan: pattern vertices reordered so that each position is
// adjacent to an earlier one whenever the component allows it, with high
// degrees first. candidates for a position come from the anchor's host
// neighborhood; all earlier positions are checked for the induced condition.
struct Plan {
    int h = 0;
    std::array<int, kMaxPatternVertices> order{};           // position -> pattern vertex
    std::array<int, kMaxPatternVertices> anchor{};          // position -> earlier position or -1
    std::array<VertexMask, kMaxPatternVertices> adj_prev{}; // earlier-position adjacency bits
};

Plan build_plan(const PatternGraph& p) {
    Plan plan;
    int h = p.vertex_count();
    plan.h = h;
    VertexMask placed = 0;
    for (int pos = 0; pos < h; ++pos) {
        int best = -1;
        int best_connected = -1;
        for (int v = 0; v < h; ++v) {
            if ((placed >> v) & 1u) continue;
            int connected = std::popcount(p.neighbors(v) & placed);
            if (connected > best_connected ||
                (connected == best_connected && best >= 0 && p.degree(v) > p.degree(best))) {
                best = v;
                best_connected = connected;
            }
        }
        plan.order[pos] = best;
        placed |= VertexMask{1} << best;
    }
    for (int pos = 0; pos < h; ++pos) {
        int v = plan.order[pos];
        plan.anchor[pos] = -1;
        plan.adj_prev[pos] = 0;
        for (int prev = 0; prev < pos; ++prev) {
            if (p.adjacent(v, plan.order[prev])) {
                plan.adj_prev[pos] |= VertexMask{1} << prev;
                if (plan.anchor[pos] < 0) plan.anchor[pos] = prev;
            }
        }
    }
    return plan;
}

struct Searcher {
    const HostGraph& host;
    const Plan& plan;
    std::array<std::uint32_t, kMaxPatternVertices> image{};
    std::uint64_t count = 0;
    std::vector<Embedding>* sink = nullptr;

    bool feasible(int pos, std::uint32_t candidate) const {
        for (int prev = 0; prev < pos; ++prev) {
            if (image[prev] == candidate) return false;
            bool want = (plan.adj_prev[pos] >> prev) & 1u;
            if (host.adjacent(candidate, image[prev]) != want) return false;
        }
        return true;
    }

    void descend(int pos) {
        if (pos == plan.h) {
            ++count;
            if (sink) {
                Embedding e;
                e.h = plan.h;
                for (int i = 0; i < plan.h; ++i) e.image[plan.order[i]] = image[i];
                sink->push_back(e);
            }
            return;
        }
        if (plan.anchor[pos] >= 0) {
            for (std::uint32_t cand : host.neighbors(image[plan.anchor[pos]])) {
                if (!feasible(pos, cand)) continue;
                image[pos] = cand;
                descend(pos + 1);
            }
        } else {
            std::int64_t n = host.vertex_count();
            for (std::int64_t v = 0; v < n; ++v) {
                auto cand = static_cast<std::uint32_t>(v);
                if (!feasible(pos, cand)) continue;
                image[pos] = cand;
                descend(pos + 1);
            }
        }
    }

    // Entry with a fixed image for position 0, used to partition the search.
    void run_from_root(std::uint32_t root) {
        image[0] = root;
        descend(1);
    }
};

}  // namespace

std::uint64_t count_induced_embeddings(const HostGraph& host, const PatternGraph& pattern,
                                       int threads) {
    Plan plan = build_plan(pattern);
    std::int64_t n = host.vertex_count();
    if (n < pattern.vertex_count()) return 0;
    std::uint64_t total = 0;
#ifdef _OPENMP
    if (threads > 1) {
#pragma omp parallel num_threads(threads) reduction(+ : total)
        {
            Searcher s{host, plan};
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t v = 0; v < n; ++v) {
                s.count = 0;
                s.run_from_root(static_cast<std::uint32_t>(v));
                total += s.count;
            }
        }
        return total;
    }
#endif
    (void)threads;
    Searcher s{host, plan};
    for (std::int64_t v = 0; v < n; ++v) s.run_from_root(static_cast<std::uint32_t>(v));
    return s.count;
}

std::uint64_t count_induced_copies(const HostGraph& host, const PatternGraph& pattern,
                                   int threads) {
    std::uint64_t labelled = count_induced_embeddings(host, pattern, threads);
    std::uint64_t aut = automorphism_count(pattern);
    if (labelled % aut != 0)
        throw std::logic_error("embedding count not divisible by |aut|");
    return labelled / aut;
}

std::uint64_t count_induced_copies_serial(const HostGraph& host, const PatternGraph& pattern) {
    return count_induced_copies(host, pattern, 1);
}

std::vector<Embedding> list_induced_copies(const HostGraph& host, const PatternGraph& pattern) {
    Plan plan = build_plan(pattern);
    std::vector<Embedding> all;
    Searcher s{host, plan};
    s.sink = &all;
    std::int64_t n = host.vertex_count();
    for (std::int64_t v = 0; v < n; ++v) s.run_from_root(static_cast<std::uint32_t>(v));

    // Group labelled embeddings by their vertex set and keep the
    // lexicographically least tuple as the copy's canonical embedding.
    std::map<std::array<std::uint32_t, kMaxPatternVertices>, Embedding> canonical;
    int h = pattern.vertex_count();
    for (const Embedding& e : all) {
        std::array<std::uint32_t, kMaxPatternVertices> key{};
        for (int i = 0; i < h; ++i) key[i] = e.image[i];
        std::sort(key.begin(), key.begin() + h);
        auto it = canonical.find(key);
        if (it == canonical.end()) {
            canonical.emplace(key, e);
        } else {
            for (int i = 0; i < h; ++i) {
                if (e.image[i] < it->second.image[i]) {
                    it->second = e;
                    break;
                }
                if (e.image[i] > it->second.image[i]) break;
            }
        }
    }
    std::vector<Embedding> out;
    out.reserve(canonical.size());
    for (auto& [key, e] : canonical) out.push_back(e);
    return out;
}

}  // namespace rigkit
