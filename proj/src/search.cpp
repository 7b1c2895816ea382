#include "search.hpp"

#include <algorithm>
#include <numeric>

#include "bergelab/error.hpp"

namespace bergelab::detail {

LinkedPath::LinkedPath(const Hypergraph& h)
    : h_(h), pos_(h.n() + 1, kNone), link_of_edge_(h.m(), kNone), visit_(h.m(), 0) {}

void LinkedPath::reset(Vertex start) {
    for (Vertex v : path_) pos_[v] = kNone;
    for (EdgeId e : links_) link_of_edge_[e] = kNone;
    path_.assign(1, start);
    links_.clear();
    pos_[start] = 0;
}

void LinkedPath::load(const BergeCertificate& path) {
    reset(path.vertices.front());
    for (std::size_t i = 1; i < path.vertices.size(); ++i) push_back(path.vertices[i], path.edges[i - 1]);
}

EdgeId LinkedPath::augment(Vertex a, Vertex b) {
    if (++stamp_ == 0) {
        std::fill(visit_.begin(), visit_.end(), 0);
        stamp_ = 1;
    }
    return augment_rec(a, b);
}

EdgeId LinkedPath::augment_rec(Vertex a, Vertex b) {
    const bool a_smaller = h_.incident(a).size() <= h_.incident(b).size();
    const auto candidates = h_.incident(a_smaller ? a : b);
    const Vertex other = a_smaller ? b : a;
    for (EdgeId e : candidates)
        if (link_of_edge_[e] == kNone && h_.contains(e, other)) return e;
    for (EdgeId e : candidates) {
        if (link_of_edge_[e] == kNone || visit_[e] == stamp_ || !h_.contains(e, other)) continue;
        visit_[e] = stamp_;
        const std::uint32_t j = link_of_edge_[e];
        const EdgeId alt = augment_rec(path_[j], path_[j + 1]);
        if (alt != kNoEdge) {
            links_[j] = alt;
            link_of_edge_[alt] = j;
            link_of_edge_[e] = kNone;
            return e;
        }
    }
    return kNoEdge;
}

void LinkedPath::push_back(Vertex u, EdgeId e) {
    link_of_edge_[e] = static_cast<std::uint32_t>(links_.size());
    links_.push_back(e);
    pos_[u] = static_cast<std::uint32_t>(path_.size());
    path_.push_back(u);
}

void LinkedPath::pop_back() {
    pos_[path_.back()] = kNone;
    path_.pop_back();
    link_of_edge_[links_.back()] = kNone;
    links_.pop_back();
}

void LinkedPath::reverse() {
    std::reverse(path_.begin(), path_.end());
    std::reverse(links_.begin(), links_.end());
    for (std::uint32_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = i;
    for (std::uint32_t i = 0; i < links_.size(); ++i) link_of_edge_[links_[i]] = i;
}

bool LinkedPath::rotate(std::uint32_t j) {
    const auto m = static_cast<std::uint32_t>(path_.size());
    if (m < 3 || j + 2 >= m) return false;
    const EdgeId old = links_[j];
    link_of_edge_[old] = kNone;
    links_[j] = kNoEdge;
    const EdgeId e = augment(path_[j], path_.back());
    if (e == kNoEdge) {
        links_[j] = old;
        link_of_edge_[old] = j;
        return false;
    }
    std::reverse(path_.begin() + j + 1, path_.end());
    std::reverse(links_.begin() + j + 1, links_.end());
    links_[j] = e;
    for (std::uint32_t i = j + 1; i < m; ++i) pos_[path_[i]] = i;
    for (std::uint32_t i = j; i + 1 < m; ++i) link_of_edge_[links_[i]] = i;
    return true;
}

BergeCertificate LinkedPath::certificate() const {
    return BergeCertificate{CertificateKind::path, false, path_, links_};
}

namespace {

Vertex min_degree_vertex(const Hypergraph& h) {
    Vertex best = 1;
    for (Vertex v = 2; v <= h.n(); ++v)
        if (h.incident(v).size() < h.incident(best).size()) best = v;
    return best;
}

// Off-path vertices sharing an edge with the right end, shuffled.
bool try_extend(const Hypergraph& h, LinkedPath& lp, Rng& rng, std::vector<Vertex>& scratch) {
    const Vertex x = lp.back();
    scratch.clear();
    for (EdgeId e : h.incident(x))
        for (Vertex u : h.edge(e))
            if (!lp.on_path(u)) scratch.push_back(u);
    if (scratch.empty()) return false;
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    rng.shuffle(scratch.begin(), scratch.end());
    for (Vertex u : scratch) {
        const EdgeId e = lp.augment(x, u);
        if (e != kNoEdge) {
            lp.push_back(u, e);
            return true;
        }
    }
    return false;
}

bool try_rotate(const Hypergraph& h, LinkedPath& lp, Rng& rng, std::vector<std::uint32_t>& scratch) {
    const Vertex x = lp.back();
    const auto m = static_cast<std::uint32_t>(lp.size());
    scratch.clear();
    for (EdgeId e : h.incident(x))
        for (Vertex v : h.edge(e))
            if (lp.on_path(v) && lp.position(v) + 2 < m) scratch.push_back(lp.position(v));
    if (scratch.empty()) return false;
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    rng.shuffle(scratch.begin(), scratch.end());
    for (auto j : scratch)
        if (lp.rotate(j)) return true;
    return false;
}

} // namespace

WalkOutcome posa_walk(const Hypergraph& h, Rng& rng, BudgetClock& clock, bool want_cycle,
                      const std::optional<BergeCertificate>& seed_path, std::size_t path_target) {
    const std::size_t n = h.n();
    const std::size_t target = path_target == 0 ? n : std::min(path_target, n);
    WalkOutcome out;
    LinkedPath lp(h);
    std::vector<Vertex> vscratch;
    std::vector<std::uint32_t> jscratch;
    const std::uint64_t stall_limit = std::max<std::uint64_t>(200, 20 * n);

    out.best_path = BergeCertificate{CertificateKind::path, false, {min_degree_vertex(h)}, {}};
    bool first = true;
    while (!clock.exhausted()) {
        if (first && seed_path && !seed_path->vertices.empty()) lp.load(*seed_path);
        else lp.reset(first ? min_degree_vertex(h) : static_cast<Vertex>(1 + rng.below(n)));
        first = false;

        std::size_t local_best = lp.size();
        std::uint64_t stall = 0;
        while (clock.tick()) {
            if (lp.size() > out.best_path.length()) out.best_path = lp.certificate();
            if (!want_cycle && lp.size() >= target) return out;
            if (lp.size() == n) {
                const EdgeId e = lp.augment(lp.back(), lp.front());
                if (e != kNoEdge) {
                    BergeCertificate cycle{CertificateKind::cycle, false, lp.vertices(), lp.links()};
                    cycle.edges.push_back(e);
                    out.cycle = std::move(cycle);
                    return out;
                }
            }
            if (try_extend(h, lp, rng, vscratch)) continue;
            lp.reverse();
            if (try_extend(h, lp, rng, vscratch)) continue;
            if (rng.coin()) lp.reverse();
            if (!try_rotate(h, lp, rng, jscratch)) {
                lp.reverse();
                if (!try_rotate(h, lp, rng, jscratch)) break;
            }
            ++out.rotations;
            if (lp.size() > local_best) {
                local_best = lp.size();
                stall = 0;
            } else if (++stall > stall_limit) {
                break;
            }
        }
        if (n == 1) break;
    }
    return out;
}

namespace {

class ExactCycleDfs {
public:
    ExactCycleDfs(const Hypergraph& h, BudgetClock& clock)
        : h_(h), shadow_(h), clock_(clock), lp_(h), avail_(h.n() + 1, 0) {}

    ExactOutcome run() {
        ExactOutcome out;
        const std::size_t n = h_.n();
        if (n < 3) {
            out.exhausted = true;
            return out;
        }
        start_ = 1;
        for (Vertex v = 2; v <= n; ++v)
            if (shadow_.neighbors(v).size() < shadow_.neighbors(start_).size()) start_ = v;
        for (Vertex v = 1; v <= n; ++v) avail_[v] = static_cast<std::uint32_t>(shadow_.neighbors(v).size());
        lp_.reset(start_);
        const bool found = dfs();
        if (found) out.cycle = cycle_;
        out.exhausted = !aborted_;
        return out;
    }

private:
    bool start_reachable() const {
        for (Vertex w : shadow_.neighbors(start_))
            if (!lp_.on_path(w) || w == lp_.back()) return true;
        return false;
    }

    bool dfs() {
        if (!clock_.tick()) {
            aborted_ = true;
            return false;
        }
        const Vertex x = lp_.back();
        if (lp_.size() == h_.n()) {
            const EdgeId e = lp_.augment(x, start_);
            if (e == kNoEdge) return false;
            cycle_ = BergeCertificate{CertificateKind::cycle, false, lp_.vertices(), lp_.links()};
            cycle_.edges.push_back(e);
            return true;
        }
        for (Vertex u : shadow_.neighbors(x)) {
            if (lp_.on_path(u)) continue;
            const EdgeId e = lp_.augment(x, u);
            if (e == kNoEdge) continue;
            lp_.push_back(u, e);
            const bool closes = x != start_;
            if (closes)
                for (Vertex w : shadow_.neighbors(x)) --avail_[w];
            bool viable = true;
            if (closes)
                for (Vertex w : shadow_.neighbors(x))
                    if (!lp_.on_path(w) && avail_[w] < 2) {
                        viable = false;
                        break;
                    }
            if (viable && lp_.size() < h_.n() && !start_reachable()) viable = false;
            if (viable && dfs()) return true;
            if (closes)
                for (Vertex w : shadow_.neighbors(x)) ++avail_[w];
            lp_.pop_back();
            if (aborted_) return false;
        }
        return false;
    }

    const Hypergraph& h_;
    ShadowGraph shadow_;
    BudgetClock& clock_;
    LinkedPath lp_;
    std::vector<std::uint32_t> avail_;
    Vertex start_ = 1;
    bool aborted_ = false;
    BergeCertificate cycle_;
};

class ExactPathDfs {
public:
    ExactPathDfs(const Hypergraph& h, BudgetClock& clock, BergeCertificate& best)
        : h_(h), shadow_(h), clock_(clock), lp_(h), best_(best), mark_(h.n() + 1, 0) {
        upper_ = std::min<std::size_t>(h.n(), h.m() + 1);
    }

    bool run() {
        if (best_.vertices.empty()) best_ = BergeCertificate{CertificateKind::path, false, {1}, {}};
        for (Vertex s = 1; s <= h_.n() && best_.length() < upper_; ++s) {
            lp_.reset(s);
            dfs();
            if (aborted_) return false;
        }
        return true;
    }

private:
    // Vertices reachable from the right end through unvisited vertices.
    std::size_t reachable_bound() {
        ++stamp_;
        std::vector<Vertex>& queue = queue_;
        queue.assign(1, lp_.back());
        std::size_t count = 0;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (Vertex w : shadow_.neighbors(queue[head]))
                if (!lp_.on_path(w) && mark_[w] != stamp_) {
                    mark_[w] = stamp_;
                    ++count;
                    queue.push_back(w);
                }
        return count;
    }

    void dfs() {
        if (!clock_.tick()) {
            aborted_ = true;
            return;
        }
        if (lp_.size() > best_.length()) best_ = lp_.certificate();
        if (best_.length() >= upper_) return;
        if (lp_.size() + reachable_bound() <= best_.length()) return;
        const Vertex x = lp_.back();
        for (Vertex u : shadow_.neighbors(x)) {
            if (lp_.on_path(u)) continue;
            const EdgeId e = lp_.augment(x, u);
            if (e == kNoEdge) continue;
            lp_.push_back(u, e);
            dfs();
            lp_.pop_back();
            if (aborted_ || best_.length() >= upper_) return;
        }
    }

    const Hypergraph& h_;
    ShadowGraph shadow_;
    BudgetClock& clock_;
    LinkedPath lp_;
    BergeCertificate& best_;
    std::vector<std::uint32_t> mark_;
    std::vector<Vertex> queue_;
    std::uint32_t stamp_ = 0;
    std::size_t upper_;
    bool aborted_ = false;
};

} // namespace

ExactOutcome exact_hamiltonian_cycle(const Hypergraph& h, BudgetClock& clock) {
    return ExactCycleDfs(h, clock).run();
}

bool exact_longest_path(const Hypergraph& h, BudgetClock& clock, BergeCertificate& best) {
    return ExactPathDfs(h, clock, best).run();
}

bool shadow_connected(const ShadowGraph& shadow) {
    const std::size_t n = shadow.n();
    if (n <= 1) return true;
    std::vector<char> seen(n + 1, 0);
    std::vector<Vertex> queue{1};
    seen[1] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (Vertex w : shadow.neighbors(queue[head]))
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    return queue.size() == n;
}

std::optional<std::string> ordinary_obstruction(const Hypergraph& h, const ShadowGraph& shadow) {
    const std::size_t n = h.n();
    if (n < 3) return "n < 3";
    if (h.m() < n) return "fewer edges than vertices";
    if (h.min_degree() < 2) return "vertex of degree < 2";
    if (!shadow_connected(shadow)) return "shadow graph disconnected";
    // A degree-2 vertex uses both of its edges, one on each side.
    std::vector<std::uint32_t> claims(h.m(), 0);
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (Vertex v = 1; v <= n; ++v) {
        const auto inc = h.incident(v);
        if (inc.size() != 2) continue;
        if (++claims[inc[0]] > 2 || ++claims[inc[1]] > 2) return "edge required by three degree-2 vertices";
        pairs.emplace_back(inc[0], inc[1]);
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return "two degree-2 vertices share both edges";
    return std::nullopt;
}

std::optional<std::string> weak_obstruction(const Hypergraph& h, const ShadowGraph& shadow) {
    const std::size_t n = h.n();
    if (n < 3) return "n < 3";
    if (h.min_degree() < 1) return "isolated vertex";
    if (!shadow_connected(shadow)) return "shadow graph disconnected";
    // Shadow-degree-2 vertices force both incident pairs into the cycle.
    std::vector<std::uint32_t> forced(n + 1, 0);
    std::vector<Vertex> parent(n + 1);
    std::vector<std::uint32_t> comp_size(n + 1, 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<std::pair<Vertex, Vertex>> forced_pairs;
    for (Vertex v = 1; v <= n; ++v) {
        const auto nb = shadow.neighbors(v);
        if (nb.size() < 2) return "vertex with fewer than two shadow neighbours";
        if (nb.size() == 2)
            for (Vertex w : nb) forced_pairs.emplace_back(std::min(v, w), std::max(v, w));
    }
    std::sort(forced_pairs.begin(), forced_pairs.end());
    forced_pairs.erase(std::unique(forced_pairs.begin(), forced_pairs.end()), forced_pairs.end());
    for (auto [a, b] : forced_pairs) {
        if (++forced[a] > 2 || ++forced[b] > 2) return "vertex with three forced cycle neighbours";
        const Vertex ra = find(a), rb = find(b);
        if (ra == rb) {
            if (comp_size[ra] < n) return "forced pairs close a short cycle";
        } else {
            parent[ra] = rb;
            comp_size[rb] += comp_size[ra];
        }
    }
    return std::nullopt;
}

BergeCertificate lift_weak(const ShadowGraph& shadow, const std::vector<Vertex>& order, CertificateKind kind) {
    BergeCertificate cert{kind, true, order, {}};
    const std::size_t len = order.size();
    const std::size_t steps = kind == CertificateKind::cycle ? len : (len == 0 ? 0 : len - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const auto ids = shadow.multiplicity(order[i], order[(i + 1) % len]);
        cert.edges.push_back(ids.empty() ? kNoEdge : ids.front());
    }
    return cert;
}

} // namespace bergelab::detail
