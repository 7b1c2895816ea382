#include "bergelab/sparsifier.hpp"

#include <algorithm>
#include <cmath>

#include "bergelab/combinatorics.hpp"
#include "bergelab/edge_masks.hpp"
#include "bergelab/error.hpp"
#include "bergelab/rng.hpp"

namespace bergelab {

namespace {

void check_epsilon(const Hypergraph& h, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "epsilon must be positive");
    if (h.n() < 2) throw Error(ErrorCode::ParameterOutOfRange, "n must be at least 2");
}

std::size_t keep_count(std::size_t n, double epsilon) {
    return static_cast<std::size_t>(std::ceil(epsilon * std::log(static_cast<double>(n))));
}

// Calls f(subset) for every s-subset of pool in lexicographic index order;
// stops early when f returns false. Returns false if stopped.
template <typename F>
bool for_each_combination(const std::vector<Vertex>& pool, std::size_t s, F&& f) {
    const std::size_t n = pool.size();
    if (s > n) return true;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    std::vector<Vertex> subset(s);
    while (true) {
        for (std::size_t i = 0; i < s; ++i) subset[i] = pool[idx[i]];
        if (!f(subset)) return false;
        std::size_t i = s;
        while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Vertex> all_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i + 1);
    return v;
}

std::vector<Vertex> complement(std::size_t n, const std::vector<Vertex>& sorted) {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= n; ++v)
        if (!std::binary_search(sorted.begin(), sorted.end(), v)) out.push_back(v);
    return out;
}

std::vector<Vertex> sample_from(std::vector<Vertex> pool, std::size_t s, Rng& rng) {
    s = std::min(s, pool.size());
    for (std::size_t i = 0; i < s; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(s);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t add_saturating(std::uint64_t a, std::uint64_t b) {
    return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    try {
        return binomial(n, k);
    } catch (const Error&) {
        return UINT64_MAX;
    }
}

// Intersection counts of every edge with a vertex set, via the bitset kernels.
class Counter {
public:
    explicit Counter(const Hypergraph& h) : masks_(h), set_(h.n()), a_(h.m()), b_(h.m()) {}

    std::span<const std::uint32_t> count(const std::vector<Vertex>& s, bool second = false) {
        auto& out = second ? b_ : a_;
        set_.clear();
        for (Vertex v : s) set_.insert(v);
        masks_.intersect(set_, out);
        return out;
    }

private:
    EdgeMasks masks_;
    VertexSet set_;
    std::vector<std::uint32_t> a_, b_;
};

nlohmann::json pair_witness(const std::vector<Vertex>& u, const std::vector<Vertex>* w, std::size_t count, double limit) {
    nlohmann::json j{{"U", u}, {"count", count}, {"limit", limit}};
    if (w) j["W"] = *w;
    return j;
}

} // namespace

std::vector<Vertex> small_set(const Hypergraph& h, double epsilon) {
    check_epsilon(h, epsilon);
    const double threshold = epsilon * std::log(static_cast<double>(h.n()));
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= h.n(); ++v)
        if (static_cast<double>(h.degree(v)) <= threshold) out.push_back(v);
    return out;
}

SparsifierOutput sparsify(const Hypergraph& h, double epsilon, std::uint64_t seed) {
    SparsifierOutput out;
    out.epsilon = epsilon;
    out.small = small_set(h, epsilon);
    const std::size_t n = h.n();
    const std::size_t keep = keep_count(n, epsilon);
    out.choices.assign(n + 1, {});
    std::vector<char> kept(h.m(), 0);
    for (Vertex v = 1; v <= n; ++v) {
        const auto inc = h.incident(v);
        std::vector<EdgeId> pool(inc.begin(), inc.end());
        if (!std::binary_search(out.small.begin(), out.small.end(), v) && pool.size() > keep) {
            // Per-vertex stream so a vertex's choice does not depend on others.
            Rng rng(derive_seed(seed, v));
            for (std::size_t i = 0; i < keep; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
            pool.resize(keep);
            std::sort(pool.begin(), pool.end());
        }
        for (EdgeId e : pool) kept[e] = 1;
        out.choices[v] = std::move(pool);
    }
    std::vector<std::vector<Vertex>> edges;
    for (EdgeId e = 0; e < h.m(); ++e)
        if (kept[e]) {
            out.source.push_back(e);
            edges.emplace_back(h.edge(e).begin(), h.edge(e).end());
        }
    out.gamma0 = Hypergraph(n, h.r(), edges);
    return out;
}

double PropertyParams::p4_limit(std::size_t u) const {
    return std::floor(static_cast<double>(u) * std::pow(log_n, 0.75));
}

std::size_t PropertyParams::p5_w_max(std::size_t u) const {
    return static_cast<std::size_t>(std::floor(static_cast<double>(u) * std::pow(log_n, 0.25)));
}

double PropertyParams::p5_limit(std::size_t u) const {
    return epsilon * log_n * static_cast<double>(u) / 2.0;
}

PropertyParams property_params(std::size_t n, double epsilon) {
    PropertyParams p;
    const double dn = static_cast<double>(n);
    p.epsilon = epsilon;
    p.log_n = std::log(dn);
    p.small_threshold = epsilon * p.log_n;
    p.max_degree = 10.0 * p.log_n;
    p.small_limit = std::pow(dn, 0.9);
    const double u = dn / std::sqrt(p.log_n);
    p.u_max = std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(u)));
    p.u_exact = static_cast<std::size_t>(std::ceil(u));
    p.w_exact = static_cast<std::size_t>(std::ceil(dn / 4.0));
    p.p6_min_edges = dn * std::cbrt(p.log_n);
    return p;
}

PropertyReport check_properties(const Hypergraph& h, const Hypergraph* gamma0, double epsilon,
                                const PropertyOptions& options) {
    check_epsilon(h, epsilon);
    const std::size_t n = h.n(), r = h.r();
    if (options.enabled[6] && !gamma0) throw Error(ErrorCode::MissingGamma0, "P7 needs gamma0");
    if (gamma0 && (gamma0->n() != n || gamma0->r() != r))
        throw Error(ErrorCode::ParameterOutOfRange, "gamma0 must share n and r with H");

    PropertyReport rep;
    rep.params = property_params(n, epsilon);
    rep.params.trials = options.trials;
    rep.params.seed = options.seed;
    rep.params.sampled = options.sampled;
    const auto& prm = rep.params;
    const auto small = small_set(h, epsilon);
    auto is_small = [&](Vertex v) { return std::binary_search(small.begin(), small.end(), v); };

    // P1
    if (options.enabled[0]) {
        auto& v = rep.p[0];
        v.status = PropertyStatus::pass;
        v.checked = n;
        for (Vertex x = 1; x <= n; ++x)
            if (static_cast<double>(h.degree(x)) > prm.max_degree) {
                v.status = PropertyStatus::fail;
                v.witness = {{"vertex", x}, {"degree", h.degree(x)}, {"limit", prm.max_degree}};
                break;
            }
    }
    // P2
    if (options.enabled[1]) {
        auto& v = rep.p[1];
        v.checked = 1;
        v.status = static_cast<double>(small.size()) <= prm.small_limit ? PropertyStatus::pass : PropertyStatus::fail;
        if (v.status == PropertyStatus::fail) v.witness = {{"small", small}, {"limit", prm.small_limit}};
    }
    // P3
    if (options.enabled[2]) {
        auto& v = rep.p[2];
        v.status = PropertyStatus::pass;
        std::vector<char> in_n(n + 1, 0);
        for (EdgeId e = 0; e < h.m() && v.status == PropertyStatus::pass; ++e) {
            ++v.checked;
            std::size_t meet = 0;
            for (Vertex x : h.edge(e)) meet += is_small(x);
            if (meet > 1) {
                v.status = PropertyStatus::fail;
                v.witness = {{"clause", 1}, {"edge", std::vector<Vertex>(h.edge(e).begin(), h.edge(e).end())}};
            }
            if (meet > 0)
                for (Vertex x : h.edge(e)) in_n[x] = 1;
        }
        for (Vertex u = 1; u <= n && v.status == PropertyStatus::pass; ++u) {
            if (is_small(u)) continue;
            std::vector<std::vector<Vertex>> meeting;
            for (EdgeId e : h.incident(u)) {
                const auto ev = h.edge(e);
                if (std::any_of(ev.begin(), ev.end(), [&](Vertex x) { return x != u && in_n[x]; }))
                    meeting.emplace_back(ev.begin(), ev.end());
                if (meeting.size() > 1) {
                    v.status = PropertyStatus::fail;
                    v.witness = {{"clause", 2}, {"vertex", u}, {"edges", meeting}};
                    break;
                }
            }
        }
    }

    Counter counter(h);
    const auto everyone = all_vertices(n);

    // P4: edges meeting U at least twice, |U| <= u_max.
    if (options.enabled[3]) {
        auto& v = rep.p[3];
        auto eval = [&](const std::vector<Vertex>& u) {
            ++v.checked;
            const auto c = counter.count(u);
            const auto twice = static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](auto x) { return x >= 2; }));
            if (static_cast<double>(twice) > prm.p4_limit(u.size())) {
                v.status = PropertyStatus::fail;
                v.witness = pair_witness(u, nullptr, twice, prm.p4_limit(u.size()));
                return false;
            }
            return true;
        };
        const bool exact = !options.sampled && subsets_up_to(n, prm.u_max) <= options.exact_limit;
        if (prm.u_max == 0) {
            v.status = PropertyStatus::pass;
            v.note = "vacuous: no admissible U";
        } else if (exact) {
            v.status = PropertyStatus::pass;
            for (std::size_t s = 2; s <= prm.u_max && v.status == PropertyStatus::pass; ++s)
                for_each_combination(everyone, s, eval);
        } else {
            v.status = PropertyStatus::sampledPass;
            Rng rng(derive_seed(options.seed, 4));
            for (std::size_t t = 0; t < options.trials; ++t)
                if (!eval(sample_from(everyone, 1 + rng.below(prm.u_max), rng))) break;
        }
    }

    // P5: edges meeting U once and meeting W; W taken at its maximum size
    // since the count only grows with W.
    if (options.enabled[4]) {
        auto& v = rep.p[4];
        auto eval = [&](const std::vector<Vertex>& u, const std::vector<Vertex>& w) {
            ++v.checked;
            const auto cu = counter.count(u);
            const auto cw = counter.count(w, true);
            std::size_t hits = 0;
            for (std::size_t e = 0; e < cu.size(); ++e) hits += cu[e] == 1 && cw[e] >= 1;
            if (static_cast<double>(hits) > prm.p5_limit(u.size())) {
                v.status = PropertyStatus::fail;
                v.witness = pair_witness(u, &w, hits, prm.p5_limit(u.size()));
                return false;
            }
            return true;
        };
        std::uint64_t pairs = 0;
        for (std::size_t s = 1; s <= prm.u_max; ++s)
            pairs = add_saturating(pairs, mul_saturating(binomial_saturating(n, s),
                                                         binomial_saturating(n - s, std::min(prm.p5_w_max(s), n - s))));
        if (prm.u_max == 0) {
            v.status = PropertyStatus::pass;
            v.note = "vacuous: no admissible U";
        } else if (!options.sampled && pairs <= options.exact_limit) {
            v.status = PropertyStatus::pass;
            for (std::size_t s = 1; s <= prm.u_max && v.status == PropertyStatus::pass; ++s) {
                const std::size_t ws = std::min(prm.p5_w_max(s), n - s);
                if (ws == 0) continue;
                for_each_combination(everyone, s, [&](const std::vector<Vertex>& u) {
                    const auto rest = complement(n, u);
                    return for_each_combination(rest, ws, [&](const std::vector<Vertex>& w) { return eval(u, w); });
                });
            }
        } else {
            v.status = PropertyStatus::sampledPass;
            Rng rng(derive_seed(options.seed, 5));
            for (std::size_t t = 0; t < options.trials; ++t) {
                const auto u = sample_from(everyone, 1 + rng.below(prm.u_max), rng);
                const std::size_t ws = std::min(prm.p5_w_max(u.size()), n - u.size());
                if (ws == 0) continue;
                if (!eval(u, sample_from(complement(n, u), ws, rng))) break;
            }
        }
    }

    // P6 (on H) and P7 (on gamma0): |U| = u_exact, |W| = w_exact, edges meeting
    // U once and W in r-1 vertices.
    auto crossing = [&](int index, Counter& cnt, auto&& fails, double limit) {
        auto& v = rep.p[index];
        const std::size_t us = prm.u_exact, ws = prm.w_exact;
        if (us + ws > n) {
            v.status = PropertyStatus::pass;
            v.note = "vacuous: |U| + |W| > n";
            return;
        }
        auto eval = [&](const std::vector<Vertex>& u, const std::vector<Vertex>& w) {
            ++v.checked;
            const auto cu = cnt.count(u);
            const auto cw = cnt.count(w, true);
            std::size_t hits = 0;
            for (std::size_t e = 0; e < cu.size(); ++e) hits += cu[e] == 1 && cw[e] == r - 1;
            if (fails(hits)) {
                v.status = PropertyStatus::fail;
                v.witness = pair_witness(u, &w, hits, limit);
                return false;
            }
            return true;
        };
        const auto pairs = mul_saturating(binomial_saturating(n, us), binomial_saturating(n - us, ws));
        if (!options.sampled && pairs <= options.exact_limit) {
            v.status = PropertyStatus::pass;
            for_each_combination(everyone, us, [&](const std::vector<Vertex>& u) {
                const auto rest = complement(n, u);
                return for_each_combination(rest, ws, [&](const std::vector<Vertex>& w) { return eval(u, w); });
            });
        } else {
            v.status = PropertyStatus::sampledPass;
            Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(index + 1)));
            for (std::size_t t = 0; t < options.trials; ++t) {
                const auto u = sample_from(everyone, us, rng);
                if (!eval(u, sample_from(complement(n, u), ws, rng))) break;
            }
        }
    };
    if (options.enabled[5])
        crossing(5, counter, [&](std::size_t hits) { return static_cast<double>(hits) < prm.p6_min_edges; },
                 prm.p6_min_edges);
    if (options.enabled[6]) {
        Counter gcounter(*gamma0);
        crossing(6, gcounter, [](std::size_t hits) { return hits == 0; }, 1.0);
    }
    return rep;
}

ImplicationVerdict implication_check(const Hypergraph& h, const SparsifierOutput& sparse, double epsilon, bool weak,
                                     const PropertyOptions& options) {
    const Hypergraph& g = sparse.gamma0;
    ImplicationVerdict out;
    out.weak = weak;
    out.min_degree = g.min_degree();
    out.degree_ok = out.min_degree >= (weak ? 1u : 2u);

    PropertyOptions opts = options;
    opts.enabled = {false, false, true, true, true, false, true};
    const auto rep = check_properties(h, &g, epsilon, opts);
    out.hypotheses = {rep[3].status, rep[4].status, rep[5].status, rep[7].status};
    out.hypotheses_hold = out.degree_ok;
    out.hypotheses_exact = true;
    for (auto s : out.hypotheses) {
        if (s == PropertyStatus::fail) out.hypotheses_hold = false;
        if (s != PropertyStatus::pass) out.hypotheses_exact = false;
    }

    const std::size_t k = g.n() / 4;
    out.connected = is_connected(g);
    out.expansion = weak ? is_weak_expander(g, k, static_cast<double>(g.r() - 1)) : is_expander(g, k, 2.0);
    out.conclusion_holds = out.expansion.verdict == ExpanderVerdict::expander && (weak || out.connected);
    out.critical = out.hypotheses_hold && !out.conclusion_holds;
    return out;
}

const char* to_string(PropertyStatus s) noexcept {
    switch (s) {
    case PropertyStatus::pass: return "pass";
    case PropertyStatus::fail: return "fail";
    case PropertyStatus::sampledPass: return "sampledPass";
    case PropertyStatus::notChecked: return "notChecked";
    }
    return "?";
}

nlohmann::json to_json(const SparsifierOutput& out) {
    nlohmann::json choices = nlohmann::json::object();
    for (std::size_t v = 1; v < out.choices.size(); ++v) choices[std::to_string(v)] = out.choices[v];
    return {{"epsilon", out.epsilon},
            {"small", out.small},
            {"gamma0Edges", out.gamma0.m()},
            {"source", out.source},
            {"choices", choices}};
}

nlohmann::json to_json(const PropertyReport& report) {
    const auto& p = report.params;
    nlohmann::json j;
    j["params"] = {{"epsilon", p.epsilon},         {"logN", p.log_n},           {"smallThreshold", p.small_threshold},
                   {"maxDegree", p.max_degree},    {"smallLimit", p.small_limit}, {"uMax", p.u_max},
                   {"uExact", p.u_exact},          {"wExact", p.w_exact},       {"p6MinEdges", p.p6_min_edges},
                   {"trials", p.trials},           {"seed", p.seed},            {"sampled", p.sampled}};
    for (int i = 0; i < 7; ++i) {
        const auto& v = report.p[i];
        nlohmann::json pv{{"status", to_string(v.status)}, {"checked", v.checked}, {"witness", v.witness}};
        if (!v.note.empty()) pv["note"] = v.note;
        j["P" + std::to_string(i + 1)] = pv;
    }
    return j;
}

nlohmann::json to_json(const ImplicationVerdict& v) {
    return {{"weak", v.weak},
            {"minDegree", v.min_degree},
            {"degreeOk", v.degree_ok},
            {"P3", to_string(v.hypotheses[0])},
            {"P4", to_string(v.hypotheses[1])},
            {"P5", to_string(v.hypotheses[2])},
            {"P7", to_string(v.hypotheses[3])},
            {"hypothesesHold", v.hypotheses_hold},
            {"hypothesesExact", v.hypotheses_exact},
            {"connected", v.connected},
            {"expansion", to_json(v.expansion)},
            {"conclusionHolds", v.conclusion_holds},
            {"critical", v.critical}};
}

} // namespace bergelab
