#include "bergelab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace bergelab::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(BERGELAB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& active() noexcept {
    static std::atomic<Isa> isa{detect_isa()};
    return isa;
}

} // namespace

const char* to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "scalar";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa detect_isa() noexcept {
    if (const char* forced = std::getenv("BERGELAB_ISA"); forced && std::strcmp(forced, "scalar") == 0)
        return Isa::scalar;
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    active().store(isa, std::memory_order_relaxed);
    return true;
}

void intersect_counts(MaskView masks, std::span<const std::uint64_t> set, std::span<std::uint32_t> out) {
    switch (active_isa()) {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(BERGELAB_HAVE_AVX2)
    case Isa::avx2: return avx2::intersect_counts(masks, set, out);
#endif
#if defined(__aarch64__)
    case Isa::neon: return neon::intersect_counts(masks, set, out);
#endif
    default: return scalar::intersect_counts(masks, set, out);
    }
}

void union_where_nonzero(MaskView masks, std::span<const std::uint32_t> counts, std::span<std::uint64_t> out) {
    switch (active_isa()) {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(BERGELAB_HAVE_AVX2)
    case Isa::avx2: return avx2::union_where_nonzero(masks, counts, out);
#endif
#if defined(__aarch64__)
    case Isa::neon: return neon::union_where_nonzero(masks, counts, out);
#endif
    default: return scalar::union_where_nonzero(masks, counts, out);
    }
}

} // namespace bergelab::kernels
