#include "bergelab/posa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "bergelab/combinatorics.hpp"
#include "bergelab/edge_masks.hpp"
#include "bergelab/error.hpp"
#include "search.hpp"

namespace bergelab {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : v) h = (h ^ x) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

struct PathNode {
    std::vector<Vertex> p;
    std::vector<EdgeId> links;
    std::size_t parent;
    RotationStep step;
};

EdgeId lowest_cover(const ShadowGraph& shadow, Vertex a, Vertex b) {
    const auto ids = shadow.multiplicity(a, b);
    return ids.empty() ? kNoEdge : ids.front();
}

// Suffix reversal after pivot index j with `e` as the new link.
PathNode rotated(const PathNode& cur, std::size_t j, EdgeId e) {
    PathNode next;
    next.p.assign(cur.p.begin(), cur.p.begin() + j + 1);
    next.p.insert(next.p.end(), cur.p.rbegin(), cur.p.rend() - (j + 1));
    next.links.assign(cur.links.begin(), cur.links.begin() + j);
    next.links.push_back(e);
    next.links.insert(next.links.end(), cur.links.rbegin(), cur.links.rend() - (j + 1));
    return next;
}

void require_path(const Hypergraph& h, const BergeCertificate& path, bool weak) {
    if (path.kind != CertificateKind::path || path.vertices.empty())
        throw Error(ErrorCode::InvalidPath, "expected a non-empty path certificate");
    BergeCertificate probe = path;
    probe.weak = weak;
    const auto verdict = verify_certificate(h, probe);
    if (!verdict.valid) throw Error(ErrorCode::InvalidPath, verdict.violation);
}

} // namespace

RotationState rotation_closure(const Hypergraph& h, const BergeCertificate& path, bool weak, std::size_t state_limit) {
    require_path(h, path, weak);
    const ShadowGraph shadow(h);
    RotationState st;
    st.base_path = path;
    st.base_path.weak = weak;
    st.left_endpoint = path.vertices.front();

    std::vector<PathNode> nodes;
    nodes.push_back(PathNode{path.vertices, path.edges, 0, {}});
    if (weak)
        for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
            nodes[0].links[i] = lowest_cover(shadow, path.vertices[i], path.vertices[i + 1]);

    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecHash> seen;
    auto key_of = [weak](const PathNode& node) {
        std::vector<std::uint32_t> key(node.p.begin(), node.p.end());
        if (!weak) key.insert(key.end(), node.links.begin(), node.links.end());
        return key;
    };
    seen.emplace(key_of(nodes[0]), 0);

    std::vector<char> on_path(h.n() + 1, 0);
    for (Vertex v : path.vertices) on_path[v] = 1;
    std::vector<char> used(h.m(), 0);

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const std::size_t m = nodes[head].p.size();
        const Vertex x = nodes[head].p.back();
        for (EdgeId e : nodes[head].links) used[e] = 1;

        if (!st.extension)
            for (EdgeId e : h.incident(x)) {
                if (!weak && used[e]) continue;
                for (Vertex u : h.edge(e))
                    if (!on_path[u]) {
                        BergeCertificate from{CertificateKind::path, weak, nodes[head].p, nodes[head].links};
                        st.extension = PathExtension{std::move(from), u, weak ? lowest_cover(shadow, x, u) : e};
                        break;
                    }
                if (st.extension) break;
            }

        for (std::size_t j = 0; j + 2 < m; ++j) {
            const Vertex v = nodes[head].p[j];
            std::vector<std::pair<EdgeId, RotationCase>> moves;
            if (weak) {
                const EdgeId e = lowest_cover(shadow, v, x);
                if (e != kNoEdge) moves.emplace_back(e, RotationCase::unusedEdge);
            } else {
                for (EdgeId e : h.incident(x)) {
                    if (!h.contains(e, v)) continue;
                    if (e == nodes[head].links[j]) moves.emplace_back(e, RotationCase::usedEdge);
                    else if (!used[e]) moves.emplace_back(e, RotationCase::unusedEdge);
                }
            }
            for (auto [e, kind] : moves) {
                if (nodes.size() >= state_limit) {
                    st.truncated = true;
                    break;
                }
                PathNode next = rotated(nodes[head], j, e);
                next.parent = head;
                next.step = RotationStep{v, e, kind};
                if (seen.emplace(key_of(next), nodes.size()).second) nodes.push_back(std::move(next));
            }
        }
        for (EdgeId e : nodes[head].links) used[e] = 0;
        if (st.truncated) break;
    }

    st.states = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vertex end = nodes[i].p.back();
        if (st.derivation.count(end)) continue;
        std::vector<RotationStep> steps;
        for (std::size_t at = i; at != 0; at = nodes[at].parent) steps.push_back(nodes[at].step);
        std::reverse(steps.begin(), steps.end());
        st.derivation.emplace(end, std::move(steps));
        st.R.push_back(end);
    }
    std::sort(st.R.begin(), st.R.end());
    st.Rpm = r_plus_minus(st.base_path, st.R);
    return st;
}

BergeCertificate replay_rotations(const Hypergraph& h, const BergeCertificate& path,
                                  const std::vector<RotationStep>& steps, bool weak) {
    require_path(h, path, weak);
    PathNode cur{path.vertices, path.edges, 0, {}};
    for (const auto& step : steps) {
        const std::size_t m = cur.p.size();
        const auto it = std::find(cur.p.begin(), cur.p.end(), step.pivot);
        const auto j = static_cast<std::size_t>(it - cur.p.begin());
        if (j + 2 >= m || step.edge >= h.m() || !h.contains(step.edge, step.pivot) ||
            !h.contains(step.edge, cur.p.back()))
            throw Error(ErrorCode::InvalidPath, "rotation step does not apply");
        if (!weak) {
            const bool is_link = cur.links[j] == step.edge;
            const bool elsewhere =
                std::count(cur.links.begin(), cur.links.end(), step.edge) > (is_link ? 1 : 0);
            if (elsewhere || is_link != (step.kind == RotationCase::usedEdge))
                throw Error(ErrorCode::InvalidPath, "rotation edge conflicts with the path");
        }
        cur = rotated(cur, j, step.edge);
    }
    return BergeCertificate{CertificateKind::path, weak, cur.p, cur.links};
}

std::vector<Vertex> r_plus_minus(const BergeCertificate& base, const std::vector<Vertex>& R) {
    const auto& p = base.vertices;
    auto in_r = [&](Vertex v) { return std::binary_search(R.begin(), R.end(), v); };
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if ((i > 0 && in_r(p[i - 1])) || (i + 1 < p.size() && in_r(p[i + 1]))) out.push_back(p[i]);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- boosters

namespace {

class BoosterProbe {
public:
    BoosterProbe(const SolveBudget& budget, const BoosterOptions& options) : budget_(budget), options_(options) {
        if (options.mode == BoosterMode::exact) budget_.mode = SolveMode::exactOnly;
    }

    // nullopt when the search did not settle the question.
    std::optional<bool> hamiltonian(const Hypergraph& g) const {
        const auto res = options_.weak ? find_weak_hamiltonian(g, budget_) : find_hamiltonian_berge(g, budget_);
        if (res.status == SolveStatus::inconclusive) return std::nullopt;
        return res.status == SolveStatus::found;
    }

    std::pair<std::size_t, bool> longest(const Hypergraph& g) const {
        const auto res = longest_berge_path(g, budget_, options_.weak);
        return {res.certificate ? res.certificate->length() : 1, res.stats.exhaustive};
    }

private:
    SolveBudget budget_;
    BoosterOptions options_;
};

} // namespace

BoosterReport boosters(const Hypergraph& h, const SolveBudget& budget, const BoosterOptions& options) {
    const std::size_t n = h.n(), r = h.r();
    const bool exact = options.mode == BoosterMode::exact;
    BoosterReport report;
    report.exact = exact;
    const BoosterProbe probe(budget, options);
    auto fail = [](const char* what) { throw Error(ErrorCode::BudgetExceeded, what); };

    const auto base_ham = probe.hamiltonian(h);
    if (!base_ham && exact) fail("Hamiltonicity of H not settled within budget");
    report.hamiltonian = base_ham.value_or(false);
    const auto [base_len, base_exact] = probe.longest(h);
    if (!base_exact && exact) fail("longest path of H not settled within budget");
    report.longest_path = base_len;

    // Adding an edge keeps a Hamiltonian cycle; a Hamiltonian cycle also
    // gives a spanning path, so below n only the path test matters.
    auto test = [&](const std::vector<Vertex>& e) -> std::optional<bool> {
        if (report.hamiltonian) return true;
        const Hypergraph g = h.with_edge(e);
        if (base_len < n) {
            const auto [len, settled] = probe.longest(g);
            if (len > base_len) return true;
            if (!settled) return std::nullopt;
            return false;
        }
        return probe.hamiltonian(g);
    };

    std::vector<std::uint64_t> ranks;
    const std::uint64_t total = binomial(n, r);
    if (exact) {
        if (total > 1'000'000) fail("too many candidate edges for exact mode");
        for (std::uint64_t k = 0; k < total; ++k) ranks.push_back(k);
    } else {
        Rng rng(options.seed);
        for (std::size_t i = 0; i < options.samples; ++i) ranks.push_back(rng.below(total));
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    }
    for (auto rank : ranks) {
        auto e = colex_unrank(rank, r);
        if (h.find_edge(e)) continue;
        ++report.candidates;
        const auto verdict = test(e);
        if (!verdict) {
            if (exact) fail("booster test not settled within budget");
            ++report.inconclusive;
            continue;
        }
        if (*verdict) report.boosters.push_back(std::move(e));
    }
    return report;
}

// ---------------------------------------------------------------- expanders

namespace {

// Does some Y with |Y| <= t hit every set? Branches over the elements of a
// smallest unhit set, largest degree first; a greedy packing of pairwise
// disjoint unhit sets bounds the remaining budget from below.
class HittingSet {
public:
    HittingSet(const std::vector<std::vector<Vertex>>& sets, std::size_t n) : sets_(sets), chosen_(n + 1, 0), mark_(n + 1, 0) {}

    bool solve(std::size_t t, std::vector<Vertex>& out) {
        picked_.clear();
        if (!search(t)) return false;
        out = picked_;
        std::sort(out.begin(), out.end());
        return true;
    }

private:
    bool hit(const std::vector<Vertex>& s) const {
        for (Vertex v : s)
            if (chosen_[v]) return true;
        return false;
    }

    bool search(std::size_t t) {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < sets_.size(); ++i)
            if (!hit(sets_[i])) open.push_back(i);
        if (open.empty()) return true;
        if (t == 0 || packing(open) > t) return false;

        std::size_t pick = open.front();
        for (auto i : open)
            if (sets_[i].size() < sets_[pick].size()) pick = i;
        std::vector<std::pair<std::size_t, Vertex>> branch;
        for (Vertex v : sets_[pick]) {
            std::size_t degree = 0;
            for (auto i : open) degree += std::count(sets_[i].begin(), sets_[i].end(), v);
            branch.emplace_back(degree, v);
        }
        std::sort(branch.begin(), branch.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (auto [deg, v] : branch) {
            chosen_[v] = 1;
            picked_.push_back(v);
            if (search(t - 1)) return true;
            picked_.pop_back();
            chosen_[v] = 0;
        }
        return false;
    }

    std::size_t packing(const std::vector<std::size_t>& open) {
        ++stamp_;
        std::size_t count = 0;
        for (auto i : open) {
            bool disjoint = true;
            for (Vertex v : sets_[i])
                if (mark_[v] == stamp_) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            for (Vertex v : sets_[i]) mark_[v] = stamp_;
            ++count;
        }
        return count;
    }

    const std::vector<std::vector<Vertex>>& sets_;
    std::vector<char> chosen_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<Vertex> picked_;
};

// Largest |Y| with |Y| < alpha * s.
std::size_t blocker_budget(double alpha, std::size_t s) {
    const double bound = alpha * static_cast<double>(s);
    const double c = std::ceil(bound - 1e-9);
    return c <= 0 ? 0 : static_cast<std::size_t>(c) - 1;
}

void validate_expander_args(const Hypergraph& h, std::size_t k, double alpha) {
    if (k > h.n()) throw Error(ErrorCode::ParameterOutOfRange, "k must not exceed n");
    if (!(alpha > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "alpha must be positive");
}

// Visits every X with 1 <= |X| <= k in size-then-lexicographic order until
// `visit` returns false.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    std::vector<Vertex> x;
    for (std::size_t s = 1; s <= k; ++s) {
        x.resize(s);
        for (std::size_t i = 0; i < s; ++i) x[i] = static_cast<Vertex>(i + 1);
        while (true) {
            if (!visit(x)) return;
            std::size_t i = s;
            while (i > 0 && x[i - 1] == n - s + i) --i;
            if (i == 0) break;
            ++x[i - 1];
            for (std::size_t j = i; j < s; ++j) x[j] = x[j - 1] + 1;
        }
    }
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t s, Rng& rng, const std::vector<char>* exclude = nullptr) {
    std::vector<Vertex> pool;
    for (Vertex v = 1; v <= n; ++v)
        if (!exclude || !(*exclude)[v]) pool.push_back(v);
    s = std::min(s, pool.size());
    for (std::size_t i = 0; i < s; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(s);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace

bool expansion_holds(const Hypergraph& h, const std::vector<Vertex>& X, const std::vector<Vertex>& Y) {
    auto in = [](const std::vector<Vertex>& s, Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    for (EdgeId e = 0; e < h.m(); ++e) {
        std::size_t meet = 0;
        bool avoids = true;
        for (Vertex v : h.edge(e)) {
            if (in(X, v)) ++meet;
            if (in(Y, v)) avoids = false;
        }
        if (meet == 1 && avoids) return true;
    }
    return false;
}

ExpanderReport is_expander(const Hypergraph& h, std::size_t k, double alpha, const ExpanderMode& mode) {
    validate_expander_args(h, k, alpha);
    const std::size_t n = h.n();
    ExpanderReport report;
    report.k = k;
    report.alpha = alpha;
    if (!mode.sampled && subsets_up_to(n, k) > mode.set_limit)
        throw Error(ErrorCode::Infeasible, "exact expander check needs too many sets; use sampled mode");

    const EdgeMasks masks(h);
    std::vector<std::uint32_t> counts(h.m());
    VertexSet xs(n);
    std::vector<std::vector<Vertex>> links;
    auto link_sets = [&](const std::vector<Vertex>& x) {
        xs.clear();
        for (Vertex v : x) xs.insert(v);
        masks.intersect(xs, counts);
        links.clear();
        for (EdgeId e = 0; e < h.m(); ++e) {
            if (counts[e] != 1) continue;
            std::vector<Vertex> rest;
            for (Vertex v : h.edge(e))
                if (!xs.contains(v)) rest.push_back(v);
            links.push_back(std::move(rest));
        }
    };

    if (!mode.sampled) {
        for_each_subset(n, k, [&](const std::vector<Vertex>& x) {
            ++report.checked_sets;
            link_sets(x);
            const std::size_t t = blocker_budget(alpha, x.size());
            std::vector<Vertex> y;
            if (HittingSet(links, n).solve(t, y)) {
                report.verdict = ExpanderVerdict::counterexample;
                report.witness = ExpanderWitness{x, y};
                return false;
            }
            return true;
        });
        return report;
    }

    report.verdict = ExpanderVerdict::sampledPass;
    Rng rng(mode.seed);
    std::vector<char> in_x(n + 1);
    for (std::size_t trial = 0; trial < mode.trials && k > 0; ++trial) {
        ++report.checked_sets;
        const auto x = random_subset(n, 1 + rng.below(k), rng);
        std::fill(in_x.begin(), in_x.end(), 0);
        for (Vertex v : x) in_x[v] = 1;
        const auto y = random_subset(n, blocker_budget(alpha, x.size()), rng, &in_x);
        link_sets(x);
        const bool blocked = std::all_of(links.begin(), links.end(), [&](const std::vector<Vertex>& s) {
            return std::any_of(s.begin(), s.end(), [&](Vertex v) { return std::binary_search(y.begin(), y.end(), v); });
        });
        if (blocked) {
            report.verdict = ExpanderVerdict::counterexample;
            report.witness = ExpanderWitness{x, y};
            break;
        }
    }
    return report;
}

ExpanderReport is_weak_expander(const Hypergraph& h, std::size_t k, double alpha, const ExpanderMode& mode) {
    validate_expander_args(h, k, alpha);
    const std::size_t n = h.n();
    ExpanderReport report;
    report.k = k;
    report.alpha = alpha;
    report.weak = true;
    if (!mode.sampled && subsets_up_to(n, k) > mode.set_limit)
        throw Error(ErrorCode::Infeasible, "exact weak expander check needs too many sets; use sampled mode");

    const EdgeMasks masks(h);
    VertexSet xs(n);
    auto check = [&](const std::vector<Vertex>& x) {
        ++report.checked_sets;
        xs.clear();
        for (Vertex v : x) xs.insert(v);
        VertexSet nb = masks.neighbourhood(xs);
        for (Vertex v : x) nb.erase(v);
        if (static_cast<double>(nb.size()) < alpha * static_cast<double>(x.size())) {
            report.verdict = ExpanderVerdict::counterexample;
            report.witness = ExpanderWitness{x, nb.members()};
            return false;
        }
        return true;
    };

    if (!mode.sampled) {
        for_each_subset(n, k, check);
        return report;
    }
    report.verdict = ExpanderVerdict::sampledPass;
    Rng rng(mode.seed);
    for (std::size_t trial = 0; trial < mode.trials && k > 0; ++trial)
        if (!check(random_subset(n, 1 + rng.below(k), rng))) break;
    return report;
}

bool is_connected(const Hypergraph& h) {
    return detail::shadow_connected(ShadowGraph(h));
}

// ---------------------------------------------------------------- absorption

namespace {

std::optional<std::vector<Vertex>> absorbable_edge(const Hypergraph& cur, const Hypergraph& supply,
                                                   const SolveBudget& budget) {
    const std::size_t n = cur.n();
    std::vector<std::vector<Vertex>> spare;
    for (EdgeId e = 0; e < supply.m(); ++e)
        if (!cur.find_edge(supply.edge(e))) spare.emplace_back(supply.edge(e).begin(), supply.edge(e).end());
    if (spare.empty()) return std::nullopt;

    SolveBudget path_budget = budget;
    path_budget.mode = SolveMode::heuristicFirst;
    path_budget.node_limit = std::max<std::uint64_t>(1, budget.node_limit / 4);
    auto longest = longest_berge_path(cur, path_budget, false).certificate;
    if (!longest) return std::nullopt;
    BergeCertificate base = *longest;

    auto contains = [](const std::vector<Vertex>& e, Vertex v) { return std::find(e.begin(), e.end(), v) != e.end(); };
    for (int side = 0; side < 2; ++side) {
        if (side == 1) {
            std::reverse(base.vertices.begin(), base.vertices.end());
            std::reverse(base.edges.begin(), base.edges.end());
        }
        const auto st = rotation_closure(cur, base, false, 20'000);
        std::vector<char> on_path(n + 1, 0);
        for (Vertex v : base.vertices) on_path[v] = 1;
        std::optional<std::vector<Vertex>> closing;
        for (Vertex x : st.R)
            for (const auto& e : spare) {
                if (!contains(e, x)) continue;
                for (Vertex u : e)
                    if (!on_path[u]) return e;
                if (!closing && base.length() >= 3 && contains(e, st.left_endpoint)) closing = e;
            }
        if (closing) return closing;
    }

    // No rotation reaches a spare edge; fall back to testing each one.
    SolveBudget probe = budget;
    probe.node_limit = std::max<std::uint64_t>(1, budget.node_limit / (4 * spare.size()));
    for (const auto& e : spare) {
        const Hypergraph g = cur.with_edge(e);
        if (find_hamiltonian_berge(g, probe).status == SolveStatus::found) return e;
        const auto p = longest_berge_path(g, probe, false).certificate;
        if (p && p->length() > base.length()) return e;
    }
    return std::nullopt;
}

} // namespace

AbsorptionResult booster_absorption(const Hypergraph& start, const Hypergraph& supply, const SolveBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    if (start.n() != supply.n() || start.r() != supply.r())
        throw Error(ErrorCode::ParameterOutOfRange, "start and supply must share n and r");
    for (EdgeId e = 0; e < start.m(); ++e)
        if (!supply.find_edge(start.edge(e)))
            throw Error(ErrorCode::ParameterOutOfRange, "start is not contained in supply");

    AbsorptionResult out;
    auto edges = start.edge_list();
    const std::size_t n = start.n();
    std::uint64_t nodes = 0, rotations = 0;
    while (true) {
        const Hypergraph cur(n, start.r(), edges);
        SolveBudget b = budget;
        b.seed = derive_seed(budget.seed, out.absorptions);
        auto res = find_hamiltonian_berge(cur, b);
        nodes += res.stats.nodes;
        rotations += res.stats.rotations;
        if (res.status == SolveStatus::found) {
            for (auto& e : res.certificate->edges) e = *supply.find_edge(cur.edge(e));
            out.result = std::move(res);
            break;
        }
        if (out.absorptions >= n) {
            out.result.reason = "absorption limit reached";
            break;
        }
        auto next = absorbable_edge(cur, supply, b);
        if (!next) {
            out.result.reason = "no absorbable supply edge";
            break;
        }
        out.absorbed.push_back(*next);
        edges.push_back(std::move(*next));
        ++out.absorptions;
    }
    if (out.result.status != SolveStatus::found) out.result.status = SolveStatus::inconclusive;
    out.result.stats.nodes = nodes;
    out.result.stats.rotations = rotations;
    out.result.stats.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

const char* to_string(ExpanderVerdict v) noexcept {
    switch (v) {
    case ExpanderVerdict::expander: return "expander";
    case ExpanderVerdict::counterexample: return "counterexample";
    case ExpanderVerdict::sampledPass: return "sampledPass";
    }
    return "?";
}

nlohmann::json to_json(const RotationState& state) {
    nlohmann::json deriv = nlohmann::json::object();
    for (const auto& [end, steps] : state.derivation) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : steps)
            arr.push_back({{"pivot", s.pivot},
                           {"edge", s.edge},
                           {"case", s.kind == RotationCase::unusedEdge ? "unusedEdge" : "usedEdge"}});
        deriv[std::to_string(end)] = arr;
    }
    nlohmann::json j{{"basePath", to_json(state.base_path)},
                     {"leftEndpoint", state.left_endpoint},
                     {"R", state.R},
                     {"Rpm", state.Rpm},
                     {"derivation", deriv},
                     {"states", state.states},
                     {"truncated", state.truncated}};
    if (state.extension)
        j["extension"] = {{"path", to_json(state.extension->path)},
                          {"vertex", state.extension->vertex},
                          {"edge", state.extension->edge}};
    else
        j["extension"] = nullptr;
    return j;
}

nlohmann::json to_json(const BoosterReport& report) {
    return {{"boosters", report.boosters},         {"candidates", report.candidates},
            {"inconclusive", report.inconclusive}, {"longestPath", report.longest_path},
            {"hamiltonian", report.hamiltonian},   {"exact", report.exact}};
}

nlohmann::json to_json(const ExpanderReport& report) {
    nlohmann::json j{{"verdict", to_string(report.verdict)}, {"k", report.k},
                     {"alpha", report.alpha},                {"weak", report.weak},
                     {"checkedSets", report.checked_sets}};
    if (report.witness)
        j["witness"] = {{"X", report.witness->X}, {"Y", report.witness->Y}};
    else
        j["witness"] = nullptr;
    return j;
}

} // namespace bergelab
