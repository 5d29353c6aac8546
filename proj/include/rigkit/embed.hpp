#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rigkit/host_graph.hpp"
#include "rigkit/pattern.hpp"

namespace rigkit {

// A labelled embedding: image[i] is the host vertex carrying pattern vertex i.
struct Embedding {
    std::array<std::uint32_t, kMaxPatternVertices> image{};
    int h = 0;

    bool operator==(const Embedding& other) const {
        if (h != other.h) return false;
        for (int i = 0; i < h; ++i)
            if (image[i] != other.image[i]) return false;
        return true;
    }
};

// Number of labelled embeddings of the pattern into the host matching
// adjacency and non-adjacency (induced semantics). Exact.
std::uint64_t count_induced_embeddings(const HostGraph& host, const PatternGraph& pattern,
                                       int threads = 1);

// Unordered induced copies: embeddings / |aut|. The division must be exact.
std::uint64_t count_induced_copies(const HostGraph& host, const PatternGraph& pattern,
                                   int threads = 1);

// Serial reference for the same kernel, kept for tests and benchmarks.
std::uint64_t count_induced_copies_serial(const HostGraph& host, const PatternGraph& pattern);

// One canonical embedding per unordered copy: the lexicographically least
// image tuple among the copy's |aut| labelled embeddings.
std::vector<Embedding> list_induced_copies(const HostGraph& host, const PatternGraph& pattern);

}  // namespace rigkit
