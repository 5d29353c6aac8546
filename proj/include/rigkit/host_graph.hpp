#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigkit {

// Simple undirected host graph on [n]. Stores sorted adjacency lists plus,
// for moderate n, one bitset row per vertex for O(1) adjacency tests; larger
// graphs fall back to binary search in the sorted lists.
class HostGraph {
  public:
    explicit HostGraph(std::int64_t n) : n_(n), adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw std::invalid_argument("host graph: negative vertex count");
    }

    static HostGraph from_edges(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges);
    static HostGraph from_edge_list_text(const std::string& text);

    std::int64_t vertex_count() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }

    const std::vector<std::uint32_t>& neighbors(std::int64_t v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    int degree(std::int64_t v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool adjacent(std::int64_t u, std::int64_t v) const {
        if (!rows_.empty())
            return (rows_[static_cast<std::size_t>(u) * row_words_ + (static_cast<std::size_t>(v) >> 6)] >>
                    (v & 63)) & 1u;
        const auto& a = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), static_cast<std::uint32_t>(v));
    }

    std::string to_edge_list_text() const;

  private:
    void finalize();

    static constexpr std::int64_t kBitsetRowLimit = 8192;

    std::int64_t n_ = 0;
    std::int64_t edge_count_ = 0;
    std::size_t row_words_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint64_t> rows_;
};

}  // namespace rigkit
