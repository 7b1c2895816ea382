// Compiled with -mavx2; only entered after a runtime CPU check.
#include "bergelab/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace bergelab::kernels::avx2 {

namespace {

// Per-64-bit-lane popcount: nibble lookup + sum of absolute differences.
inline __m256i popcount_epi64(__m256i v) noexcept {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

} // namespace

void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept {
    const std::size_t m = masks.m;
    const std::size_t words = masks.words_per_edge;
    const std::uint64_t* base = masks.words.data();
    std::size_t e = 0;
    for (; e + 4 <= m; e += 4) {
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t w = 0; w < words; ++w) {
            const __m256i s = _mm256_set1_epi64x(static_cast<long long>(set[w]));
            const __m256i row = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + w * m + e));
            acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(row, s)));
        }
        // narrow four 64-bit lanes to 32 bits: pick dwords 0, 2, 4, 6
        const __m256i packed = _mm256_permutevar8x32_epi32(acc, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + e), _mm256_castsi256_si128(packed));
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
        __m256i acc = _mm256_setzero_si256();
        std::size_t e = 0;
        for (; e + 4 <= m; e += 4) {
            const __m128i c32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts.data() + e));
            const __m256i c64 = _mm256_cvtepu32_epi64(c32);
            // all-ones lanes where count != 0
            const __m256i zero_lane = _mm256_cmpeq_epi64(c64, _mm256_setzero_si256());
            const __m256i data = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + e));
            acc = _mm256_or_si256(acc, _mm256_andnot_si256(zero_lane, data));
        }
        alignas(32) std::uint64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        std::uint64_t result = lanes[0] | lanes[1] | lanes[2] | lanes[3];
        for (; e < m; ++e)
            if (counts[e] != 0) result |= row[e];
        out[w] = result;
    }
}

} // namespace bergelab::kernels::avx2
