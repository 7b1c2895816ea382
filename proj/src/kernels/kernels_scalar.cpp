#include "bergelab/kernels.hpp"

#include <bit>

namespace bergelab::kernels::scalar {

void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept {
    const std::size_t m = masks.m;
    for (std::size_t e = 0; e < m; ++e) out[e] = 0;
    for (std::size_t w = 0; w < masks.words_per_edge; ++w) {
        const std::uint64_t s = set[w];
        const std::uint64_t* row = masks.words.data() + w * m;
        for (std::size_t e = 0; e < m; ++e) out[e] += static_cast<std::uint32_t>(std::popcount(row[e] & s));
    }
}

void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) noexcept {
    const std::size_t m = masks.m;
    for (std::size_t w = 0; w < masks.words_per_edge; ++w) {
        const std::uint64_t* row = masks.words.data() + w * m;
        std::uint64_t acc = 0;
        for (std::size_t e = 0; e < m; ++e)
            if (counts[e] != 0) acc |= row[e];
        out[w] = acc;
    }
}

} // namespace bergelab::kernels::scalar
