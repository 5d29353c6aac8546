#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rigkit/clique_cover.hpp"
#include "rigkit/embed.hpp"
#include "rigkit/sampler.hpp"

namespace rigkit {

// Per-replicate attribution of induced copies to the unique clique cover
// that induced them. Orbit keys are covers canonicalized over
// aut(H0), since C0 lives on the labelled pattern but copies arrive with
// arbitrary embeddings.
struct CoverCounts {
    std::uint64_t x = 0;
    std::uint64_t y0 = 0;
    std::uint64_t y1 = 0;
    std::map<CliqueCover, std::uint64_t> per_orbit;
};

// Lexicographically least relabelling of the cover over the automorphisms.
CliqueCover canonical_cover_orbit(const CliqueCover& cover, const PatternGraph& g);

// Inverted vertex -> objects index over one incidence sample, shared by all
// witness queries against it.
class WitnessContext {
  public:
    explicit WitnessContext(const IncidenceSample& sample);

    // The witness cover of an induced copy, pulled back through the
    // embedding to pattern labels. Rejects copies that are not induced;
    // a witness failing cover validity is an internal-consistency error.
    CliqueCover witness(const PatternGraph& g, const Embedding& copy) const;

  private:
    const IncidenceSample* sample_;
    std::vector<std::vector<std::uint32_t>> objects_of_vertex_;
};

// Witness every induced copy of the projection and bucket by canonical
// orbit. c0 holds the labelled covers of C0(H0).
CoverCounts per_cover_counts(const IncidenceSample& sample, const PatternGraph& g,
                             const std::vector<CliqueCover>& c0);
CoverCounts per_cover_counts(const IncidenceSample& sample, const HostGraph& projection,
                             const PatternGraph& g, const std::vector<CliqueCover>& c0);

}  // namespace rigkit
