#include "bergelab/edge_masks.hpp"

#include <bit>

namespace bergelab {

std::size_t VertexSet::size() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back(static_cast<Vertex>(w * 64 + b + 1));
            bits &= bits - 1;
        }
    }
    return out;
}

EdgeMasks::EdgeMasks(const Hypergraph& h)
    : n_(h.n()), m_(h.m()), words_per_edge_((h.n() + 63) / 64), words_(words_per_edge_ * h.m(), 0) {
    for (EdgeId e = 0; e < m_; ++e)
        for (Vertex v : h.edge(e)) words_[((v - 1) >> 6) * m_ + e] |= 1ULL << ((v - 1) & 63);
}

void EdgeMasks::intersect(const VertexSet& set, std::span<std::uint32_t> counts) const {
    kernels::intersect_counts(view(), set.words(), counts);
}

VertexSet EdgeMasks::neighbourhood(const VertexSet& set) const {
    std::vector<std::uint32_t> counts(m_);
    intersect(set, counts);
    VertexSet out(n_);
    kernels::union_where_nonzero(view(), counts, out.words());
    return out;
}

} // namespace bergelab
