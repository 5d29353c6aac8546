#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigkit/rational.hpp"

namespace rigkit {

// Vertex subsets of a pattern graph are bitmasks over [h], h <= kMaxPatternVertices.
using VertexMask = std::uint32_t;

inline int subset_size(VertexMask s) { return std::popcount(s); }
inline VertexMask full_mask(int h) { return (VertexMask{1} << h) - 1; }
inline int lowest_vertex(VertexMask s) { return std::countr_zero(s); }

constexpr int kMaxPatternVertices = 8;
constexpr int kDefaultVertexCap = 8;

// A small labelled undirected graph: the pattern whose induced copies are
// counted. Immutable after construction; at least one edge, no self-loops,
// h >= 2. The vertex cap keeps every enumeration in this library finite.
class PatternGraph {
  public:
    PatternGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                 int cap = kDefaultVertexCap);

    int vertex_count() const { return h_; }
    int edge_count() const { return e_; }
    VertexMask vertices() const { return full_mask(h_); }

    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
    VertexMask neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return std::popcount(adj_[v]); }

    // Number of edges with both endpoints in S.
    int edges_within(VertexMask s) const;

    bool is_clique(VertexMask s) const;

    // Edges as (u, v) with u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

    // Index of edge {u,v} in the edges() ordering; -1 for non-edges.
    int edge_index(int u, int v) const { return edge_index_[u][v]; }

    bool operator==(const PatternGraph& other) const {
        return h_ == other.h_ && adj_ == other.adj_;
    }

  private:
    int h_ = 0;
    int e_ = 0;
    std::vector<VertexMask> adj_;
    std::array<std::array<int8_t, kMaxPatternVertices>, kMaxPatternVertices> edge_index_{};
};

// H0[S] with vertices relabelled to [|S|] preserving order. S must be nonempty.
PatternGraph induced_subgraph(const PatternGraph& g, VertexMask s);

// All adjacency-preserving bijections of the pattern onto itself, each as a
// vertex image array.
std::vector<std::array<std::uint8_t, kMaxPatternVertices>> automorphisms(const PatternGraph& g);

std::uint64_t automorphism_count(const PatternGraph& g);

// N_n = C(n,h) h! / |aut(H0)|: the number of subgraphs of K_n isomorphic to
// H0. Exact; zero when n < h.
BigInt count_pattern_copies(std::int64_t n, const PatternGraph& g);

// max over proper nonempty S of |E(S)|/|S| < e/h, decided exactly.
bool is_strictly_balanced(const PatternGraph& g);

// min over proper nonempty S with E(S) >= 1 of |E(S)| (|S|/|E(S)| - h/e).
// Subsets without edges are excluded; nullopt when no proper subset has an
// edge (h = 2).
std::optional<Rational> kappa(const PatternGraph& g);

// Parsers. Edge-list format: first line "h", then one "u v" pair per line,
// 1-indexed. graph6: the single-line format, n <= 62.
PatternGraph pattern_from_edge_list(const std::string& text, int cap = kDefaultVertexCap);
PatternGraph pattern_from_graph6(const std::string& line, int cap = kDefaultVertexCap);
PatternGraph pattern_from_file(const std::string& path, bool graph6 = false,
                               int cap = kDefaultVertexCap);

// Common fixtures.
PatternGraph make_complete(int h);
PatternGraph make_cycle(int t);
PatternGraph make_path(int h);
PatternGraph make_complete_bipartite(int k, int t);

}  // namespace rigkit
