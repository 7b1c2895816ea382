#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "bergelab/hypergraph.hpp"
#include "bergelab/kernels.hpp"

namespace bergelab {

/// Vertex set over 1..n as 64-bit words (bit v-1 for vertex v).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    void insert(Vertex v) noexcept { words_[(v - 1) >> 6] |= 1ULL << ((v - 1) & 63); }
    void erase(Vertex v) noexcept { words_[(v - 1) >> 6] &= ~(1ULL << ((v - 1) & 63)); }
    bool contains(Vertex v) const noexcept { return (words_[(v - 1) >> 6] >> ((v - 1) & 63)) & 1ULL; }
    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }
    std::size_t size() const noexcept;
    std::vector<Vertex> members() const;

    std::size_t universe() const noexcept { return n_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Word-major edge masks of a hypergraph, ready for the bitset kernels.
class EdgeMasks {
public:
    explicit EdgeMasks(const Hypergraph& h);

    kernels::MaskView view() const noexcept { return {words_, m_, words_per_edge_}; }
    std::size_t m() const noexcept { return m_; }
    std::size_t words_per_edge() const noexcept { return words_per_edge_; }

    /// counts[e] = |e ∩ set|.
    void intersect(const VertexSet& set, std::span<std::uint32_t> counts) const;
    /// Union of all edges meeting `set`.
    VertexSet neighbourhood(const VertexSet& set) const;

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t words_per_edge_;
    std::vector<std::uint64_t> words_;
};

} // namespace bergelab
