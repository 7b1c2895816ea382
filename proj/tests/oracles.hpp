#pragma once

// Brute-force reference implementations used only by the tests. They read
// the hypergraph through edge lists and never call the library's search,
// matching or rotation code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "bergelab/hypergraph.hpp"
#include "bergelab/rng.hpp"

namespace oracle {

using bergelab::Hypergraph;
using bergelab::Vertex;
using Edge = std::vector<Vertex>;
using EdgeList = std::vector<Edge>;

inline bool has(const Edge& e, Vertex v) { return std::find(e.begin(), e.end(), v) != e.end(); }

// Is there an injective choice of edges for the given vertex pairs?
inline bool injective_assignment(const EdgeList& edges, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                 bool distinct) {
    std::vector<char> taken(edges.size(), 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == pairs.size()) return true;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (distinct && taken[e]) continue;
            if (!has(edges[e], pairs[i].first) || !has(edges[e], pairs[i].second)) continue;
            taken[e] = 1;
            if (go(i + 1)) return true;
            taken[e] = 0;
        }
        return false;
    };
    return go(0);
}

inline std::vector<std::pair<Vertex, Vertex>> pairs_of(const std::vector<Vertex>& order, bool cyclic) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) out.emplace_back(order[i], order[i + 1]);
    if (cyclic && order.size() >= 2) out.emplace_back(order.back(), order.front());
    return out;
}

/// Hamiltonian Berge cycle over every cyclic order and edge assignment.
inline bool hamiltonian(std::size_t n, const EdgeList& edges, bool weak) {
    if (n < 3) return false;
    std::vector<Vertex> rest;
    for (Vertex v = 2; v <= n; ++v) rest.push_back(v);
    do {
        if (rest.front() > rest.back()) continue;  // each cycle once per direction
        std::vector<Vertex> order{1};
        order.insert(order.end(), rest.begin(), rest.end());
        if (injective_assignment(edges, pairs_of(order, true), !weak)) return true;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return false;
}

/// Maximum number of vertices on a Berge path.
inline std::size_t longest_path(std::size_t n, const EdgeList& edges, bool weak) {
    std::size_t best = 1;
    std::vector<Vertex> order;
    std::vector<char> on(n + 1, 0);
    std::function<void()> grow = [&]() {
        best = std::max(best, order.size());
        for (Vertex u = 1; u <= n; ++u) {
            if (on[u]) continue;
            order.push_back(u);
            if (injective_assignment(edges, pairs_of(order, false), !weak)) {
                on[u] = 1;
                grow();
                on[u] = 0;
            }
            order.pop_back();
        }
    };
    for (Vertex s = 1; s <= n; ++s) {
        order = {s};
        on[s] = 1;
        grow();
        on[s] = 0;
    }
    return best;
}

inline EdgeList edges_of(const Hypergraph& h) {
    EdgeList out;
    for (bergelab::EdgeId e = 0; e < h.m(); ++e) out.emplace_back(h.edge(e).begin(), h.edge(e).end());
    return out;
}

/// Every r-subset of [n] in colex order.
inline EdgeList all_subsets(std::size_t n, std::size_t r) {
    EdgeList out;
    std::vector<Vertex> cur;
    std::function<void(Vertex)> go = [&](Vertex next) {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = next; v <= n; ++v) {
            cur.push_back(v);
            go(v + 1);
            cur.pop_back();
        }
    };
    go(1);
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

/// Non-edges whose addition lengthens the longest path or makes the
/// hypergraph Hamiltonian.
inline EdgeList boosters(std::size_t n, std::size_t r, const EdgeList& edges, bool weak) {
    const std::size_t base = longest_path(n, edges, weak);
    EdgeList out;
    for (const auto& e : all_subsets(n, r)) {
        if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
        EdgeList plus = edges;
        plus.push_back(e);
        if (longest_path(n, plus, weak) > base || hamiltonian(n, plus, weak)) out.push_back(e);
    }
    return out;
}

/// Path validity checked from scratch: distinct vertices, each link edge
/// covers its pair, and (ordinary) distinct links.
inline bool valid_path(const EdgeList& edges, const std::vector<Vertex>& p, const std::vector<std::size_t>& links,
                       bool weak) {
    if (links.size() + 1 != p.size()) return false;
    std::set<Vertex> vs(p.begin(), p.end());
    if (vs.size() != p.size()) return false;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i] >= edges.size()) return false;
        if (!has(edges[links[i]], p[i]) || !has(edges[links[i]], p[i + 1])) return false;
    }
    if (!weak) {
        std::set<std::size_t> ls(links.begin(), links.end());
        if (ls.size() != links.size()) return false;
    }
    return true;
}

struct ClosureResult {
    std::set<Vertex> endpoints;
    bool extension = false;
};

/// Exhaustive search over (path, links) states: from a state, try every
/// pivot index j <= m-3 and every edge, build the reversed-suffix path with
/// that edge as the new link, and keep it if it is a valid path. Weak
/// states carry the vertex order only.
inline ClosureResult rotation_closure(std::size_t n, const EdgeList& edges, const std::vector<Vertex>& path,
                                      const std::vector<std::size_t>& links, bool weak) {
    ClosureResult out;
    using State = std::pair<std::vector<Vertex>, std::vector<std::size_t>>;
    auto canon = [&](State s) {
        if (weak) s.second.clear();
        return s;
    };
    std::set<State> seen{canon({path, links})};
    std::vector<State> queue{{path, links}};
    std::set<Vertex> on(path.begin(), path.end());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto [p, l] = queue[head];
        const std::size_t m = p.size();
        out.endpoints.insert(p.back());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!has(edges[e], p.back())) continue;
            if (!weak && std::find(l.begin(), l.end(), e) != l.end()) continue;
            for (Vertex u : edges[e])
                if (!on.count(u) && u <= n) out.extension = true;
        }
        for (std::size_t j = 0; j + 2 < m; ++j)
            for (std::size_t e = 0; e < edges.size(); ++e) {
                std::vector<Vertex> np(p.begin(), p.begin() + j + 1);
                for (std::size_t i = m; i-- > j + 1;) np.push_back(p[i]);
                std::vector<std::size_t> nl(l.begin(), l.begin() + j);
                nl.push_back(e);
                for (std::size_t i = m - 1; i-- > j + 1;) nl.push_back(l[i]);
                if (!valid_path(edges, np, nl, weak)) continue;
                State s{np, nl};
                if (seen.insert(canon(s)).second) queue.push_back(s);
            }
    }
    return out;
}

/// Definition of a (k, alpha)-expander: search over every X and every Y.
/// Returns true if no blocking pair exists.
inline bool expander_by_definition(std::size_t n, const EdgeList& edges, std::size_t k, double alpha) {
    const std::uint32_t full = 1u << n;
    for (std::uint32_t x = 1; x < full; ++x) {
        const auto xs = static_cast<std::size_t>(__builtin_popcount(x));
        if (xs > k) continue;
        for (std::uint32_t y = 0; y < full; ++y) {
            if (y & x) continue;
            if (!(static_cast<double>(__builtin_popcount(y)) < alpha * static_cast<double>(xs))) continue;
            bool found = false;
            for (const auto& e : edges) {
                int meet = 0;
                bool avoid = true;
                for (Vertex v : e) {
                    if (x >> (v - 1) & 1) ++meet;
                    if (y >> (v - 1) & 1) avoid = false;
                }
                if (meet == 1 && avoid) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

/// Weak expander from the definition: for every X, every Y disjoint from X
/// with |Y| < alpha|X| leaves some edge that meets X and is not inside
/// X u Y.
inline bool weak_expander_by_definition(std::size_t n, const EdgeList& edges, std::size_t k, double alpha) {
    const std::uint32_t full = 1u << n;
    for (std::uint32_t x = 1; x < full; ++x) {
        const auto xs = static_cast<std::size_t>(__builtin_popcount(x));
        if (xs > k) continue;
        for (std::uint32_t y = 0; y < full; ++y) {
            if (y & x) continue;
            if (!(static_cast<double>(__builtin_popcount(y)) < alpha * static_cast<double>(xs))) continue;
            bool escapes = false;
            for (const auto& e : edges) {
                bool meets = false, inside = true;
                for (Vertex v : e) {
                    if (x >> (v - 1) & 1) meets = true;
                    if (!((x | y) >> (v - 1) & 1)) inside = false;
                }
                if (meets && !inside) {
                    escapes = true;
                    break;
                }
            }
            if (!escapes) return false;
        }
    }
    return true;
}

/// Uniform random r-uniform edge list with m distinct edges.
inline EdgeList random_edges(std::size_t n, std::size_t r, std::size_t m, bergelab::Rng& rng) {
    auto all = all_subsets(n, r);
    rng.shuffle(all.begin(), all.end());
    all.resize(std::min(m, all.size()));
    return all;
}

} // namespace oracle
