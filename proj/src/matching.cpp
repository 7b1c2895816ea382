#include "bergelab/matching.hpp"

#include <algorithm>
#include <limits>

namespace bergelab {

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : adjacency_(left), match_left_(left, kUnmatched), match_right_(right, kUnmatched), dist_(left, 0) {}

void BipartiteMatcher::add_edge(std::uint32_t left, std::uint32_t right) { adjacency_[left].push_back(right); }

bool BipartiteMatcher::bfs() {
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> queue;
    queue.reserve(adjacency_.size());
    for (std::uint32_t u = 0; u < adjacency_.size(); ++u) {
        if (match_left_[u] == kUnmatched) {
            dist_[u] = 0;
            queue.push_back(u);
        } else {
            dist_[u] = inf;
        }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto u = queue[head];
        for (auto v : adjacency_[u]) {
            const auto w = match_right_[v];
            if (w == kUnmatched) {
                found = true;
            } else if (dist_[w] == inf) {
                dist_[w] = dist_[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return found;
}

bool BipartiteMatcher::dfs(std::uint32_t u) {
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    for (auto v : adjacency_[u]) {
        const auto w = match_right_[v];
        if (w == kUnmatched || (dist_[w] == dist_[u] + 1 && dfs(w))) {
            match_left_[u] = v;
            match_right_[v] = u;
            return true;
        }
    }
    dist_[u] = inf;
    return false;
}

std::size_t BipartiteMatcher::solve() {
    std::size_t size = static_cast<std::size_t>(
        std::count_if(match_left_.begin(), match_left_.end(), [](auto m) { return m != kUnmatched; }));
    while (bfs())
        for (std::uint32_t u = 0; u < adjacency_.size(); ++u)
            if (match_left_[u] == kUnmatched && dfs(u)) ++size;
    return size;
}

std::optional<std::vector<EdgeId>> assign_distinct_edges(const Hypergraph& h,
                                                         std::span<const std::pair<Vertex, Vertex>> pairs) {
    if (pairs.size() > h.m()) return std::nullopt;
    BipartiteMatcher matcher(pairs.size(), h.m());
    for (std::uint32_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        bool any = false;
        for (EdgeId e : h.incident(a))
            if (h.contains(e, b)) {
                matcher.add_edge(i, e);
                any = true;
            }
        if (!any) return std::nullopt;
    }
    if (matcher.solve() != pairs.size()) return std::nullopt;
    std::vector<EdgeId> out(pairs.size());
    for (std::uint32_t i = 0; i < pairs.size(); ++i) out[i] = matcher.match_of_left(i);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> consecutive_pairs(std::span<const Vertex> order, bool cyclic) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (order.size() < 2) return pairs;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) pairs.emplace_back(order[i], order[i + 1]);
    if (cyclic) pairs.emplace_back(order.back(), order.front());
    return pairs;
}

} // namespace bergelab
