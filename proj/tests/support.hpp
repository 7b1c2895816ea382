#pragma once

#include <doctest.h>

#include "bergelab/error.hpp"
#include "bergelab/hypergraph.hpp"

namespace fixtures {

using bergelab::Hypergraph;

inline Hypergraph F1() { return Hypergraph(4, 3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}); }
inline Hypergraph F2() { return Hypergraph(4, 3, {{1, 2, 3}, {1, 2, 4}}); }
inline Hypergraph F3() { return Hypergraph(3, 3, {{1, 2, 3}}); }
inline Hypergraph F4() { return Hypergraph(5, 3, {{1, 2, 3}, {1, 4, 5}}); }

} // namespace fixtures

#define CHECK_ERROR_CODE(expr, expected)                                  \
    do {                                                                  \
        bool thrown_ = false;                                             \
        try {                                                             \
            (void)(expr);                                                 \
        } catch (const bergelab::Error& e_) {                             \
            thrown_ = true;                                               \
            CHECK(e_.code() == (expected));                               \
        }                                                                 \
        CHECK_MESSAGE(thrown_, "expected bergelab::Error from " #expr);   \
    } while (0)
