#include "bergelab/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "bergelab/error.hpp"
#include "bergelab/matching.hpp"
#include "search.hpp"

namespace bergelab {

using detail::BudgetClock;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Heuristic walk (when enabled) followed by exact search on an ordinary
// instance. The walk may use at most half the node budget.
void solve_cycle(const Hypergraph& h, const SolveBudget& budget, SolveResult& res) {
    BudgetClock clock(budget);
    if (budget.mode == SolveMode::heuristicFirst) {
        clock.set_node_limit(budget.node_limit / 2);
        Rng rng(budget.seed);
        auto walk = detail::posa_walk(h, rng, clock, true);
        res.stats.rotations += walk.rotations;
        clock.set_node_limit(budget.node_limit);
        if (walk.cycle) {
            res.status = SolveStatus::found;
            res.certificate = std::move(walk.cycle);
            res.stats.nodes = clock.nodes();
            return;
        }
    }
    auto exact = detail::exact_hamiltonian_cycle(h, clock);
    res.stats.nodes = clock.nodes();
    if (exact.cycle) {
        res.status = SolveStatus::found;
        res.certificate = std::move(exact.cycle);
        res.stats.exhaustive = false;
    } else if (exact.exhausted) {
        res.status = SolveStatus::provedAbsent;
        res.reason = "exhaustive search";
        res.stats.exhaustive = true;
    } else {
        res.status = SolveStatus::inconclusive;
        res.reason = "budget exhausted";
    }
}

// Checks a found certificate; a failure here is a solver bug, reported as
// inconclusive rather than passed on.
void finalize(const Hypergraph& h, SolveResult& res, std::chrono::steady_clock::time_point t0) {
    if (res.status == SolveStatus::found) {
        const auto verdict = verify_certificate(h, *res.certificate);
        const bool cycle = res.certificate->kind == CertificateKind::cycle;
        if (!verdict.valid || (cycle && !verdict.hamiltonian)) {
            res.status = SolveStatus::inconclusive;
            res.reason = "internal: certificate rejected (" + verdict.violation + ")";
            res.certificate.reset();
        }
    }
    res.stats.time_ms = ms_since(t0);
}

Hypergraph two_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.push_back({a, b});
    return Hypergraph(n, 2, edges);
}

} // namespace

SolveResult find_hamiltonian_berge(const Hypergraph& h, const SolveBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    const ShadowGraph shadow(h);
    if (auto why = detail::ordinary_obstruction(h, shadow)) {
        res.status = SolveStatus::provedAbsent;
        res.reason = *why;
        res.stats.exhaustive = true;
    } else {
        solve_cycle(h, budget, res);
    }
    finalize(h, res, t0);
    return res;
}

SolveResult find_weak_hamiltonian(const Hypergraph& h, const SolveBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    const ShadowGraph shadow(h);
    if (auto why = detail::weak_obstruction(h, shadow)) {
        res.status = SolveStatus::provedAbsent;
        res.reason = *why;
        res.stats.exhaustive = true;
    } else {
        const Hypergraph graph = shadow.as_graph();
        solve_cycle(graph, budget, res);
        if (res.certificate)
            res.certificate = detail::lift_weak(shadow, res.certificate->vertices, CertificateKind::cycle);
    }
    finalize(h, res, t0);
    return res;
}

SolveResult longest_berge_path(const Hypergraph& h, const SolveBudget& budget, bool weak) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    res.status = SolveStatus::found;
    const std::size_t n = h.n();
    if (n == 1 || h.m() == 0) {
        res.certificate = BergeCertificate{CertificateKind::path, weak, {1}, {}};
        res.stats.exhaustive = true;
        finalize(h, res, t0);
        return res;
    }

    const ShadowGraph shadow(h);
    const Hypergraph graph = weak ? shadow.as_graph() : Hypergraph::empty(2, 2);
    const Hypergraph& target = weak ? graph : h;
    const std::size_t upper = weak ? n : std::min<std::size_t>(n, h.m() + 1);

    BudgetClock clock(budget);
    BergeCertificate best{CertificateKind::path, false, {1}, {}};
    if (budget.mode == SolveMode::heuristicFirst) {
        clock.set_node_limit(budget.node_limit / 2);
        Rng rng(budget.seed);
        auto walk = detail::posa_walk(target, rng, clock, false, std::nullopt, upper);
        res.stats.rotations = walk.rotations;
        best = walk.best_path;
        clock.set_node_limit(budget.node_limit);
    }
    bool exhaustive = best.length() >= upper;
    if (!exhaustive) exhaustive = detail::exact_longest_path(target, clock, best);
    res.stats.nodes = clock.nodes();
    res.stats.exhaustive = exhaustive;
    if (!exhaustive) res.reason = "budget exhausted; path may not be maximum";
    res.certificate = weak ? detail::lift_weak(shadow, best.vertices, CertificateKind::path) : best;
    finalize(h, res, t0);
    return res;
}

namespace {

class DirectedExact {
public:
    DirectedExact(const Digraph& d, BudgetClock& clock)
        : d_(d), clock_(clock), n_(d.n()), on_(n_ + 1, 0), in_open_(n_ + 1, 0) {}

    std::optional<std::vector<Vertex>> run(bool& exhausted) {
        Vertex start = 1;
        for (Vertex v = 2; v <= n_; ++v)
            if (d_.in(v).size() < d_.in(start).size()) start = v;
        start_ = start;
        for (Vertex v = 1; v <= n_; ++v) in_open_[v] = static_cast<std::uint32_t>(d_.in(v).size());
        path_.assign(1, start);
        on_[start] = 1;
        const bool found = dfs();
        exhausted = !aborted_;
        if (found) return path_;
        return std::nullopt;
    }

private:
    bool dfs() {
        if (!clock_.tick()) {
            aborted_ = true;
            return false;
        }
        const Vertex x = path_.back();
        if (path_.size() == n_) return d_.has_arc(x, start_);
        // Arcs out of x other than the chosen one become unusable as in-arcs.
        for (Vertex w : d_.out(x)) --in_open_[w];
        std::vector<Vertex> next(d_.out(x).begin(), d_.out(x).end());
        std::sort(next.begin(), next.end());
        bool result = false;
        for (Vertex u : next) {
            if (on_[u]) continue;
            bool viable = true;
            for (Vertex w : d_.out(x))
                if (!on_[w] && w != u && in_open_[w] == 0) {
                    viable = false;
                    break;
                }
            if (!viable) continue;
            on_[u] = 1;
            path_.push_back(u);
            if (dfs()) {
                result = true;
                break;
            }
            path_.pop_back();
            on_[u] = 0;
            if (aborted_) break;
        }
        for (Vertex w : d_.out(x)) ++in_open_[w];
        return result;
    }

    const Digraph& d_;
    BudgetClock& clock_;
    std::size_t n_;
    std::vector<char> on_;
    std::vector<std::uint32_t> in_open_;
    std::vector<Vertex> path_;
    Vertex start_ = 1;
    bool aborted_ = false;
};

// Successor-array cycle cover improved by 2-swaps and alternating-path moves.
class CoverPatcher {
public:
    CoverPatcher(const Digraph& d, Rng& rng)
        : succ_(d.n() + 1), pred_(d.n() + 1), cyc_(d.n() + 1), d_(d), rng_(rng), n_(d.n()) {}

    bool initial_cover() {
        BipartiteMatcher bm(n_, n_);
        std::vector<Vertex> order(n_);
        for (Vertex v = 1; v <= n_; ++v) {
            order.assign(d_.out(v).begin(), d_.out(v).end());
            rng_.shuffle(order.begin(), order.end());
            for (Vertex w : order) bm.add_edge(v - 1, w - 1);
        }
        if (bm.solve() < n_) return false;
        for (Vertex v = 1; v <= n_; ++v) {
            succ_[v] = bm.match_of_left(v - 1) + 1;
            pred_[succ_[v]] = v;
        }
        return true;
    }

    std::size_t label_cycles() {
        std::fill(cyc_.begin(), cyc_.end(), 0);
        std::size_t count = 0;
        for (Vertex v = 1; v <= n_; ++v) {
            if (cyc_[v]) continue;
            ++count;
            for (Vertex x = v; !cyc_[x]; x = succ_[x]) cyc_[x] = static_cast<std::uint32_t>(count);
        }
        return count;
    }

    bool any_crossing() const {
        for (Vertex a = 1; a <= n_; ++a)
            for (Vertex y : d_.out(a))
                if (cyc_[y] != cyc_[a]) return true;
        return false;
    }

    // Arc a->y across cycles and b->z with b = pred(y), z = succ(a).
    bool two_swap() {
        std::vector<Vertex> order(n_);
        for (Vertex v = 1; v <= n_; ++v) order[v - 1] = v;
        rng_.shuffle(order.begin(), order.end());
        for (Vertex a : order)
            for (Vertex y : d_.out(a)) {
                if (cyc_[y] == cyc_[a]) continue;
                const Vertex b = pred_[y], z = succ_[a];
                if (!d_.has_arc(b, z)) continue;
                link(a, y);
                link(b, z);
                return true;
            }
        return false;
    }

    // Forces a random crossing arc a->y, then repairs the cover along an
    // alternating path from b = pred(y) to z = succ(a).
    bool perturb() {
        std::vector<std::pair<Vertex, Vertex>> crossing;
        for (Vertex a = 1; a <= n_; ++a)
            for (Vertex y : d_.out(a))
                if (cyc_[y] != cyc_[a]) crossing.emplace_back(a, y);
        if (crossing.empty()) {
            // Arcs that change the cover within a cycle still reshuffle it.
            for (Vertex a = 1; a <= n_; ++a)
                for (Vertex y : d_.out(a))
                    if (succ_[a] != y) crossing.emplace_back(a, y);
            if (crossing.empty()) return false;
        }
        const auto [a, y] = crossing[rng_.below(crossing.size())];
        const Vertex b = pred_[y], z = succ_[a];
        const auto saved_succ = succ_;
        const auto saved_pred = pred_;
        link(a, y);

        std::vector<std::pair<Vertex, Vertex>> parent(n_ + 1, {0, 0});
        std::vector<char> seen(n_ + 1, 0);
        std::vector<Vertex> queue{b};
        seen[b] = 1;
        Vertex end = 0;
        std::vector<Vertex> outs;
        for (std::size_t head = 0; head < queue.size() && !end; ++head) {
            const Vertex p = queue[head];
            outs.assign(d_.out(p).begin(), d_.out(p).end());
            rng_.shuffle(outs.begin(), outs.end());
            for (Vertex q : outs) {
                if (q == z) {
                    end = p;
                    break;
                }
                if (q == y) continue;
                const Vertex c = pred_[q];
                if (c == p || seen[c]) continue;
                seen[c] = 1;
                parent[c] = {p, q};
                queue.push_back(c);
            }
        }
        if (!end) {
            succ_ = saved_succ;
            pred_ = saved_pred;
            return false;
        }
        link(end, z);
        for (Vertex p = end; p != b;) {
            const auto [pp, q] = parent[p];
            link(pp, q);
            p = pp;
        }
        return true;
    }

    std::vector<Vertex> order() const {
        std::vector<Vertex> out{1};
        for (Vertex x = succ_[1]; x != 1; x = succ_[x]) out.push_back(x);
        return out;
    }

    // Public so the caller can snapshot and restore a move.
    std::vector<Vertex> succ_;
    std::vector<Vertex> pred_;
    std::vector<std::uint32_t> cyc_;

private:
    void link(Vertex a, Vertex b) {
        succ_[a] = b;
        pred_[b] = a;
    }

    const Digraph& d_;
    Rng& rng_;
    std::size_t n_;
};

} // namespace

DigraphSolveResult digraph_hamilton(const Digraph& d, const SolveBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    DigraphSolveResult res;
    const std::size_t n = d.n();
    auto done = [&](SolveStatus s, std::string reason) {
        res.status = s;
        res.reason = std::move(reason);
        if (s == SolveStatus::provedAbsent) res.stats.exhaustive = true;
        res.stats.time_ms = ms_since(t0);
        return res;
    };
    if (n < 2) return done(SolveStatus::provedAbsent, "n < 2");
    for (Vertex v = 1; v <= n; ++v)
        if (d.out(v).empty() || d.in(v).empty()) return done(SolveStatus::provedAbsent, "vertex with in- or out-degree 0");

    BudgetClock clock(budget);
    Rng rng(budget.seed);
    if (budget.mode == SolveMode::heuristicFirst && n > 8) {
        clock.set_node_limit(budget.node_limit / 2);
        CoverPatcher cp(d, rng);
        if (!cp.initial_cover()) {
            res.stats.nodes = clock.nodes();
            return done(SolveStatus::provedAbsent, "no cycle cover");
        }
        std::size_t cycles = cp.label_cycles();
        if (cycles > 1 && !cp.any_crossing()) return done(SolveStatus::provedAbsent, "not strongly connected");
        while (clock.tick()) {
            if (cycles == 1) {
                res.order = cp.order();
                res.stats.nodes = clock.nodes();
                return done(SolveStatus::found, "");
            }
            if (cp.two_swap()) {
                ++res.stats.rotations;
                cycles = cp.label_cycles();
                continue;
            }
            const auto saved_succ = cp.succ_;
            const auto saved_pred = cp.pred_;
            if (!cp.perturb()) continue;
            ++res.stats.rotations;
            const std::size_t now = cp.label_cycles();
            if (now > cycles && rng.below(4) != 0) {
                cp.succ_ = saved_succ;
                cp.pred_ = saved_pred;
                cp.label_cycles();
            } else {
                cycles = now;
            }
        }
        clock.set_node_limit(budget.node_limit);
    }

    bool exhausted = false;
    auto order = DirectedExact(d, clock).run(exhausted);
    res.stats.nodes = clock.nodes();
    if (order) {
        res.order = std::move(order);
        return done(SolveStatus::found, "");
    }
    if (exhausted) return done(SolveStatus::provedAbsent, "exhaustive search");
    return done(SolveStatus::inconclusive, "budget exhausted");
}

SolveResult kout2_pipeline(const KOutSample& sample, const SolveBudget& budget, std::uint64_t seed) {
    if (sample.k != 2) throw Error(ErrorCode::WrongK, "kout2_pipeline requires k = 2");
    const auto t0 = std::chrono::steady_clock::now();
    const Hypergraph& h = sample.hypergraph;
    SolveResult res;
    const ShadowGraph shadow(h);
    if (auto why = detail::ordinary_obstruction(h, shadow)) {
        res.status = SolveStatus::provedAbsent;
        res.reason = *why;
        res.stats.exhaustive = true;
        finalize(h, res, t0);
        return res;
    }

    constexpr int kAttempts = 4;
    res.reason = "no liftable directed cycle";
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        const Digraph d = orient_two_out(sample, derive_seed(seed, 2 * attempt));
        SolveBudget sub = budget;
        sub.node_limit = std::max<std::uint64_t>(1, budget.node_limit / kAttempts);
        sub.seed = derive_seed(seed, 2 * attempt + 1);
        const auto dres = digraph_hamilton(d, sub);
        res.stats.nodes += dres.stats.nodes;
        res.stats.rotations += dres.stats.rotations;
        if (dres.status != SolveStatus::found) {
            if (dres.status == SolveStatus::inconclusive) res.reason = "directed search budget exhausted";
            continue;
        }
        // Each arc may use any of its provenance edges; ask for distinct ones.
        const auto& order = *dres.order;
        const std::size_t n = order.size();
        BipartiteMatcher bm(n, h.m());
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<EdgeId> ids;
            for (const auto& o : d.provenance(order[i], order[(i + 1) % n])) ids.push_back(o.edge);
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            for (EdgeId e : ids) bm.add_edge(i, e);
        }
        if (bm.solve() < n) {
            res.reason = "lifted edges clash";
            continue;
        }
        BergeCertificate cert{CertificateKind::cycle, false, order, {}};
        for (std::size_t i = 0; i < n; ++i) cert.edges.push_back(bm.match_of_left(i));
        res.status = SolveStatus::found;
        res.certificate = std::move(cert);
        res.reason.clear();
        break;
    }
    finalize(h, res, t0);
    return res;
}

SolveResult one_out_weak_pipeline(const KOutSample& sample, const SolveBudget& budget) {
    if (sample.k != 1) throw Error(ErrorCode::WrongK, "one_out_weak_pipeline requires k = 1");
    if (sample.r < 4) throw Error(ErrorCode::WrongR, "one_out_weak_pipeline requires r >= 4");
    const auto t0 = std::chrono::steady_clock::now();
    const Hypergraph& h = sample.hypergraph;
    const std::size_t n = sample.n;

    // Graph edge {x, y} for y in S_x; remember the lowest picking hyperedge.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex x = 1; x <= n; ++x)
        for (Vertex y : h.edge(sample.choice_ids[x].front()))
            if (y != x) pairs.emplace_back(std::min(x, y), std::max(x, y));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    const Hypergraph graph = two_graph(n, pairs);

    SolveResult res;
    const ShadowGraph gshadow(graph);
    if (auto why = detail::weak_obstruction(graph, gshadow)) {
        // Only the embedded graph is known to be non-Hamiltonian.
        res.status = SolveStatus::inconclusive;
        res.reason = "embedded graph: " + *why;
    } else {
        solve_cycle(graph, budget, res);
        if (res.status == SolveStatus::provedAbsent) {
            res.status = SolveStatus::inconclusive;
            res.reason = "embedded graph not Hamiltonian";
        }
    }
    if (res.status == SolveStatus::found) {
        const auto& order = res.certificate->vertices;
        BergeCertificate cert{CertificateKind::cycle, true, order, {}};
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex x = order[i], y = order[(i + 1) % n];
            const EdgeId ex = sample.choice_ids[x].front(), ey = sample.choice_ids[y].front();
            const bool x_picks = h.contains(ex, y), y_picks = h.contains(ey, x);
            cert.edges.push_back(x_picks && y_picks ? std::min(ex, ey) : (x_picks ? ex : ey));
        }
        res.certificate = std::move(cert);
    }
    finalize(h, res, t0);
    return res;
}

std::optional<TripleWitness> degree1_triple_obstruction(const Hypergraph& h) {
    if (h.r() != 3) throw Error(ErrorCode::WrongR, "degree1_triple_obstruction requires r = 3");
    const std::size_t n = h.n();
    // For every x, the degree-1 vertices whose unique edge contains x.
    std::vector<std::vector<Vertex>> hangers(n + 1);
    for (Vertex v = 1; v <= n; ++v) {
        if (h.degree(v) != 1) continue;
        for (Vertex x : h.edge(h.incident(v).front()))
            if (x != v) hangers[x].push_back(v);
    }
    for (Vertex x = 1; x <= n; ++x) {
        auto& hs = hangers[x];
        if (hs.size() < 3) continue;
        std::sort(hs.begin(), hs.end());
        return TripleWitness{hs[0], hs[1], hs[2], x};
    }
    return std::nullopt;
}

const char* to_string(SolveStatus s) noexcept {
    switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::provedAbsent: return "provedAbsent";
    case SolveStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(SolveMode m) noexcept {
    return m == SolveMode::exactOnly ? "exactOnly" : "heuristicFirst";
}

SolveMode solve_mode_from_string(const std::string& s) {
    if (s == "exactOnly" || s == "exact") return SolveMode::exactOnly;
    if (s == "heuristicFirst" || s == "heuristic") return SolveMode::heuristicFirst;
    throw Error(ErrorCode::ConfigInvalid, "unknown solve mode '" + s + "'");
}

namespace {

nlohmann::json stats_json(const SolveStats& s, bool include_time) {
    nlohmann::json j{{"nodes", s.nodes}, {"rotations", s.rotations}, {"exhaustive", s.exhaustive}};
    if (include_time) j["time_ms"] = s.time_ms;
    return j;
}

} // namespace

nlohmann::json to_json(const SolveResult& result, bool include_time) {
    nlohmann::json j{{"status", to_string(result.status)}, {"stats", stats_json(result.stats, include_time)}};
    j["certificate"] = result.certificate ? to_json(*result.certificate) : nlohmann::json(nullptr);
    if (!result.reason.empty()) j["reason"] = result.reason;
    return j;
}

nlohmann::json to_json(const DigraphSolveResult& result, bool include_time) {
    nlohmann::json j{{"status", to_string(result.status)}, {"stats", stats_json(result.stats, include_time)}};
    j["order"] = result.order ? nlohmann::json(*result.order) : nlohmann::json(nullptr);
    if (!result.reason.empty()) j["reason"] = result.reason;
    return j;
}

} // namespace bergelab
