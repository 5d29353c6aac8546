#include "rigkit/witness.hpp"

#include <algorithm>
#include <set>

namespace rigkit {

CliqueCover canonical_cover_orbit(const CliqueCover& cover, const PatternGraph& g) {
    auto auts = automorphisms(g);
    std::vector<VertexMask> best;
    for (const auto& sigma : auts) {
        std::vector<VertexMask> relabelled;
        relabelled.reserve(cover.cliques.size());
        for (VertexMask c : cover.cliques) {
            VertexMask m = 0;
            for (int v = 0; v < g.vertex_count(); ++v)
                if ((c >> v) & 1u) m |= VertexMask{1} << sigma[v];
            relabelled.push_back(m);
        }
        std::sort(relabelled.begin(), relabelled.end());
        if (best.empty() || relabelled < best) best = std::move(relabelled);
    }
    return CliqueCover(std::move(best));
}

WitnessContext::WitnessContext(const IncidenceSample& sample) : sample_(&sample) {
    objects_of_vertex_.assign(static_cast<std::size_t>(sample.n), {});
    for (std::size_t w = 0; w < sample.chooser_sets.size(); ++w)
        for (std::uint32_t v : sample.chooser_sets[w])
            objects_of_vertex_[v].push_back(static_cast<std::uint32_t>(w));
}

CliqueCover WitnessContext::witness(const PatternGraph& g, const Embedding& copy) const {
    int h = g.vertex_count();
    // Trace of every incident object on the copy, in pattern labels.
    std::vector<std::pair<std::uint32_t, VertexMask>> incident;
    for (int i = 0; i < h; ++i)
        for (std::uint32_t w : objects_of_vertex_[copy.image[static_cast<std::size_t>(i)]])
            incident.emplace_back(w, VertexMask{1} << i);
    std::sort(incident.begin(), incident.end());
    std::set<VertexMask> traces;
    std::size_t i = 0;
    std::vector<VertexMask> parts;
    while (i < incident.size()) {
        std::uint32_t w = incident[i].first;
        VertexMask trace = 0;
        while (i < incident.size() && incident[i].first == w) {
            trace |= incident[i].second;
            ++i;
        }
        if (subset_size(trace) >= 2) traces.insert(trace);
    }
    // The copy must be induced: the union of trace cliques on the copy has to
    // realize the pattern's edges exactly.
    std::array<VertexMask, kMaxPatternVertices> realized{};
    for (VertexMask t : traces)
        for (int u = 0; u < h; ++u)
            if ((t >> u) & 1u) realized[static_cast<std::size_t>(u)] |= t & ~(VertexMask{1} << u);
    for (int u = 0; u < h; ++u)
        if (realized[static_cast<std::size_t>(u)] != g.neighbors(u))
            throw std::invalid_argument("witness: copy is not an induced copy of the pattern");
    parts.assign(traces.begin(), traces.end());
    CliqueCover cover(std::move(parts));
    if (!is_valid_cover(g, cover, true))
        throw std::logic_error("witness: recovered cover is not a clique cover of the pattern");
    return cover;
}

CoverCounts per_cover_counts(const IncidenceSample& sample, const PatternGraph& g,
                             const std::vector<CliqueCover>& c0) {
    return per_cover_counts(sample, project_graph(sample), g, c0);
}

CoverCounts per_cover_counts(const IncidenceSample& sample, const HostGraph& projection,
                             const PatternGraph& g, const std::vector<CliqueCover>& c0) {
    CoverCounts counts;
    std::set<CliqueCover> c0_orbits;
    for (const auto& cover : c0) c0_orbits.insert(canonical_cover_orbit(cover, g));
    WitnessContext context(sample);
    for (const Embedding& copy : list_induced_copies(projection, g)) {
        CliqueCover orbit = canonical_cover_orbit(context.witness(g, copy), g);
        ++counts.per_orbit[orbit];
        ++counts.x;
        if (c0_orbits.count(orbit))
            ++counts.y0;
        else
            ++counts.y1;
    }
    return counts;
}

}  // namespace rigkit
