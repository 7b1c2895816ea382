// aarch64 only; Advanced SIMD is baseline there, so no runtime check needed.
#include "bergelab/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace bergelab::kernels::neon {

void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept {
    const std::size_t m = masks.m;
    const std::size_t words = masks.words_per_edge;
    const std::uint64_t* base = masks.words.data();
    std::size_t e = 0;
    for (; e + 2 <= m; e += 2) {
        uint64x2_t acc = vdupq_n_u64(0);
        for (std::size_t w = 0; w < words; ++w) {
            const uint64x2_t row = vld1q_u64(base + w * m + e);
            const uint64x2_t hit = vandq_u64(row, vdupq_n_u64(set[w]));
            const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(hit));
            acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes))));
        }
        out[e] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 0));
        out[e + 1] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 1));
    }
    for (; e < m; ++e) {
        std::uint32_t c = 0;
        for (std::size_t w = 0; w < words; ++w) c += static_cast<std::uint32_t>(std::popcount(base[w * m + e] & set[w]));
        out[e] = c;
    }
}

void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) noexcept {
    const std::size_t m = masks.m;
    const std::uint64_t* base = masks.words.data();
    for (std::size_t w = 0; w < masks.words_per_edge; ++w) {
        const std::uint64_t* row = base + w * m;
        uint64x2_t acc = vdupq_n_u64(0);
        std::size_t e = 0;
        for (; e + 2 <= m; e += 2) {
            const uint64x2_t c64 = vmovl_u32(vld1_u32(counts.data() + e));
            const uint64x2_t nonzero = vtstq_u64(c64, c64);
            acc = vorrq_u64(acc, vandq_u64(vld1q_u64(row + e), nonzero));
        }
        std::uint64_t result = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
        for (; e < m; ++e)
            if (counts[e] != 0) result |= row[e];
        out[w] = result;
    }
}

} // namespace bergelab::kernels::neon

#endif
