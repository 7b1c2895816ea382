#pragma once

#include <cstdint>
#include <limits>

namespace bergelab {

// Vertices are labelled 1..n everywhere in the public API.
using Vertex = std::uint32_t;
// EdgeIds are 0..m-1 in insertion order.
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

} // namespace bergelab
