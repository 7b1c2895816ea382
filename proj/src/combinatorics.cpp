#include "bergelab/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "bergelab/error.hpp"

namespace bergelab {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    __uint128_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorCode::ParameterOutOfRange, "binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0.0;
    return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(static_cast<double>(n - k) + 1));
}

std::uint64_t colex_rank(std::span<const Vertex> sorted_labels) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < sorted_labels.size(); ++i)
        rank += binomial(sorted_labels[i] - 1, i + 1);
    return rank;
}

namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept {
    try {
        return binomial(n, k);
    } catch (const Error&) {
        return std::numeric_limits<std::uint64_t>::max();
    }
}

} // namespace

std::vector<Vertex> colex_unrank(std::uint64_t rank, std::size_t r) {
    std::vector<Vertex> out(r);
    for (std::size_t i = r; i-- > 0;) {
        // largest c with C(c, i+1) <= rank
        std::uint64_t lo = i, hi = i;
        while (binomial_saturating(hi + 1, i + 1) <= rank) hi = hi * 2 + 1;
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (binomial_saturating(mid, i + 1) <= rank) lo = mid;
            else hi = mid - 1;
        }
        out[i] = static_cast<Vertex>(lo + 1);
        rank -= binomial(lo, i + 1);
    }
    return out;
}

std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 1; i <= k && i <= n; ++i) {
        std::uint64_t c = 0;
        try {
            c = binomial(n, i);
        } catch (const Error&) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        if (total > std::numeric_limits<std::uint64_t>::max() - c)
            return std::numeric_limits<std::uint64_t>::max();
        total += c;
    }
    return total;
}

} // namespace bergelab
