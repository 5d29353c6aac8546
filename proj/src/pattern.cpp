#include "rigkit/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rigkit {

PatternGraph::PatternGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                           int cap) {
    if (cap < 2 || cap > kMaxPatternVertices)
        throw std::invalid_argument("pattern vertex cap must be in [2, 8]");
    if (vertex_count < 2) throw std::invalid_argument("pattern needs at least 2 vertices");
    if (vertex_count > cap)
        throw std::invalid_argument("pattern has " + std::to_string(vertex_count) +
                                    " vertices, cap is " + std::to_string(cap));
    h_ = vertex_count;
    adj_.assign(h_, 0);
    for (auto& row : edge_index_) row.fill(-1);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= h_ || v >= h_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        adj_[u] |= VertexMask{1} << v;
        adj_[v] |= VertexMask{1} << u;
    }
    int idx = 0;
    for (int u = 0; u < h_; ++u)
        for (int v = u + 1; v < h_; ++v)
            if (adjacent(u, v)) {
                edge_index_[u][v] = edge_index_[v][u] = static_cast<int8_t>(idx++);
            }
    e_ = idx;
    if (e_ == 0) throw std::invalid_argument("pattern must have at least one edge");
}

int PatternGraph::edges_within(VertexMask s) const {
    int count = 0;
    for (VertexMask rest = s; rest;) {
        int v = lowest_vertex(rest);
        rest &= rest - 1;
        count += std::popcount(adj_[v] & rest);
    }
    return count;
}

bool PatternGraph::is_clique(VertexMask s) const {
    int k = subset_size(s);
    return edges_within(s) == k * (k - 1) / 2;
}

std::vector<std::pair<int, int>> PatternGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(e_);
    for (int u = 0; u < h_; ++u)
        for (int v = u + 1; v < h_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

PatternGraph induced_subgraph(const PatternGraph& g, VertexMask s) {
    if (!s) throw std::invalid_argument("induced_subgraph: empty vertex subset");
    std::vector<int> label(g.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if ((s >> v) & 1u) label[v] = next++;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (label[u] >= 0 && label[v] >= 0) edges.emplace_back(label[u], label[v]);
    if (edges.empty()) {
        // The PatternGraph invariant requires an edge; restrictions of a
        // pattern may be edgeless, so callers needing those work on masks
        // directly. Here we only serve callers that expect a pattern.
        throw std::invalid_argument("induced_subgraph: subset induces no edge");
    }
    return PatternGraph(std::max(next, 2), edges);
}

namespace {

void extend_automorphism(const PatternGraph& g, std::array<std::uint8_t, kMaxPatternVertices>& map,
                         VertexMask used, int depth,
                         std::vector<std::array<std::uint8_t, kMaxPatternVertices>>& out) {
    int h = g.vertex_count();
    if (depth == h) {
        out.push_back(map);
        return;
    }
    for (int img = 0; img < h; ++img) {
        if ((used >> img) & 1u) continue;
        if (g.degree(depth) != g.degree(img)) continue;
        bool ok = true;
        for (int prev = 0; prev < depth; ++prev)
            if (g.adjacent(depth, prev) != g.adjacent(img, map[prev])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        map[depth] = static_cast<std::uint8_t>(img);
        extend_automorphism(g, map, used | (VertexMask{1} << img), depth + 1, out);
    }
}

}  // namespace

std::vector<std::array<std::uint8_t, kMaxPatternVertices>> automorphisms(const PatternGraph& g) {
    std::vector<std::array<std::uint8_t, kMaxPatternVertices>> out;
    std::array<std::uint8_t, kMaxPatternVertices> map{};
    extend_automorphism(g, map, 0, 0, out);
    return out;
}

std::uint64_t automorphism_count(const PatternGraph& g) { return automorphisms(g).size(); }

BigInt count_pattern_copies(std::int64_t n, const PatternGraph& g) {
    int h = g.vertex_count();
    if (n < h) return 0;
    BigInt binom = 1;
    for (int i = 0; i < h; ++i) {
        binom *= BigInt(n - i);
        binom /= BigInt(i + 1);  // exact: product of i+1 consecutive integers
    }
    BigInt hfact = 1;
    for (int i = 2; i <= h; ++i) hfact *= i;
    BigInt aut(automorphism_count(g));
    return binom * hfact / aut;
}

bool is_strictly_balanced(const PatternGraph& g) {
    int h = g.vertex_count();
    Rational density(g.edge_count(), h);
    for (VertexMask s = 1; s < full_mask(h); ++s) {
        if (Rational(g.edges_within(s), subset_size(s)) >= density) return false;
    }
    return true;
}

std::optional<Rational> kappa(const PatternGraph& g) {
    int h = g.vertex_count();
    Rational inv_density(h, g.edge_count());
    std::optional<Rational> best;
    for (VertexMask s = 1; s < full_mask(h); ++s) {
        int es = g.edges_within(s);
        if (es < 1) continue;
        Rational value = Rational(subset_size(s)) - Rational(es) * inv_density;
        if (!best || value < *best) best = value;
    }
    return best;
}

PatternGraph pattern_from_edge_list(const std::string& text, int cap) {
    std::istringstream in(text);
    int h = 0;
    if (!(in >> h)) throw std::invalid_argument("edge list: missing vertex count");
    std::vector<std::pair<int, int>> edges;
    long long u, v;
    while (in >> u >> v) {
        if (u < 1 || v < 1) throw std::invalid_argument("edge list: vertices are 1-indexed");
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    if (!in.eof()) throw std::invalid_argument("edge list: trailing garbage");
    return PatternGraph(h, edges, cap);
}

PatternGraph pattern_from_graph6(const std::string& line, int cap) {
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    if (s.empty()) throw std::invalid_argument("graph6: empty line");
    if (s[0] == '~') throw std::invalid_argument("graph6: only n <= 62 supported");
    int n = s[0] - 63;
    if (n < 0 || n > 62) throw std::invalid_argument("graph6: bad vertex count byte");
    std::vector<std::pair<int, int>> edges;
    std::size_t pos = 1;
    int bit = 5;
    int cur = (pos < s.size()) ? s[pos] - 63 : 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (pos >= s.size()) throw std::invalid_argument("graph6: truncated bit vector");
            if ((cur >> bit) & 1) edges.emplace_back(u, v);
            if (--bit < 0) {
                ++pos;
                bit = 5;
                cur = (pos < s.size()) ? s[pos] - 63 : 0;
            }
        }
    }
    return PatternGraph(n, edges, cap);
}

PatternGraph pattern_from_file(const std::string& path, bool graph6, int cap) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pattern file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return graph6 ? pattern_from_graph6(buf.str(), cap) : pattern_from_edge_list(buf.str(), cap);
}

PatternGraph make_complete(int h) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < h; ++u)
        for (int v = u + 1; v < h; ++v) edges.emplace_back(u, v);
    return PatternGraph(h, edges);
}

PatternGraph make_cycle(int t) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < t; ++v) edges.emplace_back(v, (v + 1) % t);
    return PatternGraph(t, edges);
}

PatternGraph make_path(int h) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < h; ++v) edges.emplace_back(v, v + 1);
    return PatternGraph(h, edges);
}

PatternGraph make_complete_bipartite(int k, int t) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < t; ++v) edges.emplace_back(u, k + v);
    return PatternGraph(k + t, edges);
}

}  // namespace rigkit
