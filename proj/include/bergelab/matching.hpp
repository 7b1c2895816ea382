#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bergelab/hypergraph.hpp"

namespace bergelab {

/// Hopcroft-Karp maximum bipartite matching. Neighbours are tried in
/// insertion order, so results are deterministic for a given build order.
class BipartiteMatcher {
public:
    static constexpr std::uint32_t kUnmatched = UINT32_MAX;

    BipartiteMatcher(std::size_t left, std::size_t right);

    void add_edge(std::uint32_t left, std::uint32_t right);
    std::size_t solve();

    std::uint32_t match_of_left(std::uint32_t left) const noexcept { return match_left_[left]; }
    std::uint32_t match_of_right(std::uint32_t right) const noexcept { return match_right_[right]; }
    std::size_t left_size() const noexcept { return adjacency_.size(); }

private:
    bool bfs();
    bool dfs(std::uint32_t u);

    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::vector<std::uint32_t> match_left_;
    std::vector<std::uint32_t> match_right_;
    std::vector<std::uint32_t> dist_;
};

/// Distinct-edge assignment for a sequence of vertex pairs: a perfect
/// matching from pairs to EdgeIds containing both endpoints, or nullopt.
/// Candidate edges are offered in ascending EdgeId order.
std::optional<std::vector<EdgeId>> assign_distinct_edges(const Hypergraph& h,
                                                         std::span<const std::pair<Vertex, Vertex>> pairs);

/// Consecutive pairs of a cyclic (or open) vertex order.
std::vector<std::pair<Vertex, Vertex>> consecutive_pairs(std::span<const Vertex> order, bool cyclic);

} // namespace bergelab
