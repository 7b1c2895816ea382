#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bergelab/types.hpp"

namespace bergelab {

/// C(n, k); throws ParameterOutOfRange on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a double, for thresholds where overflow is irrelevant.
double binomial_real(std::uint64_t n, std::uint64_t k);

/// Colexicographic rank of an r-subset of {1..n} given as ascending labels:
/// rank = sum_i C(label_i - 1, i + 1) for i = 0..r-1.
std::uint64_t colex_rank(std::span<const Vertex> sorted_labels);

/// Inverse of colex_rank: ascending labels (1-based) of the r-subset with the
/// given rank.
std::vector<Vertex> colex_unrank(std::uint64_t rank, std::size_t r);

/// Sum_{i=1..k} C(n, i), saturating at UINT64_MAX.
std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k);

} // namespace bergelab
