#pragma once

// Bitset kernels behind the expander and property checkers.
//
// Edge masks use a word-major layout: word w of edge e lives at
// masks[w * m + e]. For a fixed word the masks of consecutive edges are
// contiguous, which is what the vector variants stream over.

#include <cstddef>
#include <cstdint>
#include <span>

namespace bergelab::kernels {

enum class Isa { scalar, avx2, neon };

const char* to_string(Isa isa) noexcept;

/// Best ISA the running CPU supports (BERGELAB_ISA=scalar forces scalar).
Isa detect_isa() noexcept;
Isa active_isa() noexcept;
bool isa_available(Isa isa) noexcept;
/// Select an ISA explicitly; returns false (and leaves the choice unchanged)
/// when the CPU or the build does not provide it.
bool set_active_isa(Isa isa) noexcept;

struct MaskView {
    std::span<const std::uint64_t> words;  // size words_per_edge * m
    std::size_t m = 0;
    std::size_t words_per_edge = 0;
};

/// out[e] = |edge_e & set| for every edge.
void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out);

/// out = OR of the masks of every edge with counts[e] != 0.
void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out);

namespace scalar {
void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept;
void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) noexcept;
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept;
void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) noexcept;
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) noexcept;
void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) noexcept;
} // namespace neon
#endif

} // namespace bergelab::kernels
