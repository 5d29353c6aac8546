#include "rigkit/host_graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rigkit {

HostGraph HostGraph::from_edges(std::int64_t n,
                                std::vector<std::pair<std::int64_t, std::int64_t>> edges) {
    HostGraph g(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("host graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("host graph: self-loop");
        g.adj_[static_cast<std::size_t>(u)].push_back(static_cast<std::uint32_t>(v));
        g.adj_[static_cast<std::size_t>(v)].push_back(static_cast<std::uint32_t>(u));
    }
    g.finalize();
    return g;
}

HostGraph HostGraph::from_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    std::int64_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("host edge list: missing vertex count");
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::int64_t u, v;
    while (in >> u >> v) {
        if (u < 1 || v < 1) throw std::invalid_argument("host edge list: vertices are 1-indexed");
        edges.emplace_back(u - 1, v - 1);
    }
    if (!in.eof()) throw std::invalid_argument("host edge list: trailing garbage");
    return from_edges(n, std::move(edges));
}

void HostGraph::finalize() {
    edge_count_ = 0;
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        edge_count_ += static_cast<std::int64_t>(list.size());
    }
    edge_count_ /= 2;
    if (n_ > 0 && n_ <= kBitsetRowLimit) {
        row_words_ = static_cast<std::size_t>((n_ + 63) / 64);
        rows_.assign(static_cast<std::size_t>(n_) * row_words_, 0);
        for (std::int64_t v = 0; v < n_; ++v)
            for (std::uint32_t w : adj_[static_cast<std::size_t>(v)])
                rows_[static_cast<std::size_t>(v) * row_words_ + (w >> 6)] |= std::uint64_t{1}
                                                                              << (w & 63);
    }
}

std::string HostGraph::to_edge_list_text() const {
    std::ostringstream out;
    out << n_ << "\n";
    for (std::int64_t v = 0; v < n_; ++v)
        for (std::uint32_t w : adj_[static_cast<std::size_t>(v)])
            if (static_cast<std::int64_t>(w) > v) out << (v + 1) << " " << (w + 1) << "\n";
    return out.str();
}

}  // namespace rigkit
