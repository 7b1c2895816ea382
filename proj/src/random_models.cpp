#include "bergelab/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bergelab/combinatorics.hpp"
#include "bergelab/error.hpp"

namespace bergelab {

namespace {

void check_nr(std::size_t n, std::size_t r) {
    if (n < 1 || r < 2 || r > n)
        throw Error(ErrorCode::ParameterOutOfRange,
                    "need 2 <= r <= n (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
}

std::vector<Vertex> edge_from_rank(std::uint64_t rank, std::size_t r) { return colex_unrank(rank, r); }

// Uniform r-set containing v: a uniform (r-1)-subset of the other n-1 labels.
std::vector<Vertex> random_edge_through(Vertex v, std::size_t n, std::size_t r, Rng& rng) {
    const std::uint64_t count = binomial(n - 1, r - 1);
    std::vector<Vertex> rest = colex_unrank(rng.below(count), r - 1);
    std::vector<Vertex> e;
    e.reserve(r);
    for (Vertex x : rest) e.push_back(x < v ? x : x + 1);
    e.insert(std::upper_bound(e.begin(), e.end(), v), v);
    return e;
}

} // namespace

Hypergraph gnrp_sample(std::size_t n, std::size_t r, double p, std::uint64_t seed) {
    check_nr(n, r);
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "p must lie in [0, 1]");
    const std::uint64_t total = binomial(n, r);
    std::vector<std::vector<Vertex>> edges;
    if (p == 0.0) return Hypergraph(n, r, edges);
    if (p == 1.0) {
        edges.reserve(total);
        for (std::uint64_t i = 0; i < total; ++i) edges.push_back(edge_from_rank(i, r));
        return Hypergraph(n, r, edges);
    }
    Rng rng(seed);
    const double log_q = std::log1p(-p);
    // gap before the next included rank is Geometric(p): floor(log U / log(1-p))
    std::uint64_t next = 0;
    while (true) {
        const double u = 1.0 - rng.uniform01();  // (0, 1]
        const double skip = std::floor(std::log(u) / log_q);
        if (skip >= static_cast<double>(total - next)) break;
        next += static_cast<std::uint64_t>(skip);
        edges.push_back(edge_from_rank(next, r));
        ++next;
        if (next >= total) break;
    }
    return Hypergraph(n, r, edges);
}

ProcessStream::ProcessStream(std::size_t n, std::size_t r, std::uint64_t seed) : total_(0), rng_(seed) {
    check_nr(n, r);
    total_ = binomial(n, r);
}

std::optional<std::uint64_t> ProcessStream::next() {
    if (emitted_ >= total_) return std::nullopt;
    const std::uint64_t i = emitted_;
    const std::uint64_t j = i + rng_.below(total_ - i);
    auto value_at = [&](std::uint64_t idx) {
        const auto it = swapped_.find(idx);
        return it == swapped_.end() ? idx : it->second;
    };
    const std::uint64_t vi = value_at(i);
    const std::uint64_t vj = value_at(j);
    swapped_[j] = vi;
    swapped_.erase(i);
    ++emitted_;
    return vj;
}

std::vector<Vertex> ProcessTrace::edge_at(std::size_t index) const { return edge_from_rank(order.at(index), r); }

Hypergraph ProcessTrace::prefix(std::size_t t) const {
    if (t > order.size()) throw Error(ErrorCode::ParameterOutOfRange, "prefix longer than trace");
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(t);
    for (std::size_t i = 0; i < t; ++i) edges.push_back(edge_at(i));
    return Hypergraph(n, r, edges);
}

bool ProcessTrace::complete() const { return order.size() == binomial(n, r); }

ProcessTrace process_sample(std::size_t n, std::size_t r, std::uint64_t seed, std::optional<std::size_t> length) {
    ProcessStream stream(n, r, seed);
    if (length && *length > stream.total())
        throw Error(ErrorCode::ParameterOutOfRange, "trace length exceeds C(n, r)");
    const std::uint64_t want = length ? *length : stream.total();
    ProcessTrace trace{n, r, {}};
    trace.order.reserve(want);
    for (std::uint64_t i = 0; i < want; ++i) trace.order.push_back(*stream.next());
    return trace;
}

ProcessTrace trace_from_edges(std::size_t n, std::size_t r, const std::vector<std::vector<Vertex>>& edges) {
    const Hypergraph h(n, r, edges);  // validates
    ProcessTrace trace{n, r, {}};
    for (EdgeId e = 0; e < h.m(); ++e) trace.order.push_back(colex_rank(h.edge(e)));
    return trace;
}

MinDegreeTracker::MinDegreeTracker(std::size_t n, std::size_t cap)
    : cap_(cap), degree_(n + 1, 0), count_at_(cap + 1, 0) {
    count_at_[0] = n;
    min_degree_ = (cap == 0 || n == 0) ? cap : 0;
}

void MinDegreeTracker::add(std::span<const Vertex> edge) {
    for (Vertex v : edge) {
        auto& d = degree_[v];
        if (d >= cap_) continue;
        --count_at_[d];
        ++d;
        ++count_at_[d];
    }
    while (min_degree_ < cap_ && count_at_[min_degree_] == 0) ++min_degree_;
}

std::size_t stopping_time(const ProcessTrace& trace, std::size_t k) {
    if (k == 0) return 0;
    MinDegreeTracker tracker(trace.n, k);
    for (std::size_t t = 0; t < trace.length(); ++t) {
        const auto e = trace.edge_at(t);
        tracker.add(e);
        if (tracker.min_degree() >= k) return t + 1;
    }
    throw Error(ErrorCode::Unreachable, "trace never reaches minimum degree " + std::to_string(k));
}

KOutSample kout_from_choices(std::size_t n, std::size_t r,
                             const std::vector<std::vector<std::vector<Vertex>>>& choices, Replacement mode) {
    check_nr(n, r);
    if (choices.size() != n) throw Error(ErrorCode::ParameterOutOfRange, "need one choice list per vertex");
    KOutSample sample;
    sample.n = n;
    sample.r = r;
    sample.k = choices.empty() ? 0 : choices[0].size();
    sample.mode = mode;
    sample.choice_ids.assign(n + 1, {});

    std::map<std::vector<Vertex>, EdgeId> ids;
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<Vertex>(i + 1);
        if (choices[i].size() != sample.k) throw Error(ErrorCode::ParameterOutOfRange, "every vertex needs k picks");
        for (auto e : choices[i]) {
            std::sort(e.begin(), e.end());
            if (!std::binary_search(e.begin(), e.end(), v))
                throw Error(ErrorCode::ParameterOutOfRange, "pick of vertex " + std::to_string(v) + " does not contain it");
            auto [it, inserted] = ids.emplace(e, static_cast<EdgeId>(edges.size()));
            if (inserted) {
                edges.push_back(e);
                sample.multiplicity.push_back(0);
            }
            ++sample.multiplicity[it->second];
            sample.choice_ids[v].push_back(it->second);
        }
        if (mode == Replacement::without) {
            auto picks = sample.choice_ids[v];
            std::sort(picks.begin(), picks.end());
            if (std::adjacent_find(picks.begin(), picks.end()) != picks.end())
                throw Error(ErrorCode::ParameterOutOfRange, "repeated pick without replacement");
        }
    }
    sample.hypergraph = Hypergraph(n, r, edges);
    return sample;
}

KOutSample kout_sample(std::size_t n, std::size_t r, std::size_t k, Replacement mode, std::uint64_t seed) {
    check_nr(n, r);
    if (k < 1) throw Error(ErrorCode::ParameterOutOfRange, "k must be >= 1");
    const std::uint64_t through = binomial(n - 1, r - 1);
    if (mode == Replacement::without && k > through)
        throw Error(ErrorCode::ParameterOutOfRange, "k exceeds the number of r-sets through a vertex");
    Rng rng(seed);
    std::vector<std::vector<std::vector<Vertex>>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<Vertex>(i + 1);
        auto& picks = choices[i];
        while (picks.size() < k) {
            auto e = random_edge_through(v, n, r, rng);
            if (mode == Replacement::without && std::find(picks.begin(), picks.end(), e) != picks.end()) continue;
            picks.push_back(std::move(e));
        }
    }
    return kout_from_choices(n, r, choices, mode);
}

nlohmann::json kout_sidecar(const KOutSample& sample) {
    nlohmann::json choices = nlohmann::json::array();
    for (std::size_t v = 1; v <= sample.n; ++v) choices.push_back(sample.choice_ids[v]);
    return {{"n", sample.n},
            {"r", sample.r},
            {"k", sample.k},
            {"mode", to_string(sample.mode)},
            {"choices", choices},
            {"multiplicity", sample.multiplicity}};
}

Digraph::Digraph(std::size_t n) : out_(n + 1), in_(n + 1) {}

void Digraph::add_arc(Vertex from, Vertex to, std::optional<ArcOrigin> origin) {
    if (from < 1 || to < 1 || from > n() || to > n())
        throw Error(ErrorCode::VertexOutOfRange, "arc endpoint outside 1..n");
    if (from == to) throw Error(ErrorCode::ParameterOutOfRange, "self-loop arc");
    auto [it, inserted] = provenance_.try_emplace(key(from, to));
    if (inserted) {
        out_[from].insert(std::upper_bound(out_[from].begin(), out_[from].end(), to), to);
        in_[to].insert(std::upper_bound(in_[to].begin(), in_[to].end(), from), from);
        ++arc_count_;
    }
    if (origin) it->second.push_back(*origin);
}

bool Digraph::has_arc(Vertex from, Vertex to) const noexcept { return provenance_.contains(key(from, to)); }

std::span<const ArcOrigin> Digraph::provenance(Vertex from, Vertex to) const noexcept {
    const auto it = provenance_.find(key(from, to));
    if (it == provenance_.end()) return {};
    return it->second;
}

std::vector<std::pair<Vertex, Vertex>> Digraph::arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(arc_count_);
    for (Vertex u = 1; u <= n(); ++u)
        for (Vertex v : out_[u]) out.emplace_back(u, v);
    return out;
}

Digraph orient_two_out_labeled(const KOutSample& sample, const std::vector<bool>& first_is_minus) {
    if (sample.k != 2) throw Error(ErrorCode::WrongK, "orientation needs a 2-out sample");
    if (first_is_minus.size() != sample.n) throw Error(ErrorCode::ParameterOutOfRange, "one label per vertex");
    const auto& h = sample.hypergraph;
    Digraph d(sample.n);
    for (Vertex v = 1; v <= sample.n; ++v) {
        const auto& picks = sample.choice_ids[v];
        const EdgeId minus = first_is_minus[v - 1] ? picks[0] : picks[1];
        const EdgeId plus = first_is_minus[v - 1] ? picks[1] : picks[0];
        for (Vertex u : h.edge(minus))
            if (u != v) d.add_arc(u, v, ArcOrigin{v, minus, ArcSign::minus});
        for (Vertex w : h.edge(plus))
            if (w != v) d.add_arc(v, w, ArcOrigin{v, plus, ArcSign::plus});
    }
    return d;
}

Digraph orient_two_out(const KOutSample& sample, std::uint64_t seed) {
    if (sample.k != 2) throw Error(ErrorCode::WrongK, "orientation needs a 2-out sample");
    Rng rng(seed);
    std::vector<bool> labels(sample.n);
    for (std::size_t i = 0; i < sample.n; ++i) labels[i] = rng.coin();
    return orient_two_out_labeled(sample, labels);
}

double threshold_p(std::size_t n, std::size_t r, double c, Variant variant) {
    if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "threshold formula needs n >= 3");
    if (r < 2) throw Error(ErrorCode::ParameterOutOfRange, "threshold formula needs r >= 2");
    const double logn = std::log(static_cast<double>(n));
    double numerator = logn + c;
    if (variant == Variant::ordinary) numerator += std::log(logn);
    const double factorial = std::tgamma(static_cast<double>(r));  // (r-1)!
    const double p = factorial * numerator / std::pow(static_cast<double>(n), static_cast<double>(r - 1));
    return std::clamp(p, 0.0, 1.0);
}

double limit_probability(double c) { return std::exp(-std::exp(-c)); }

double coupon_cover_estimate(std::size_t n, std::size_t r, std::size_t trials, std::uint64_t seed) {
    check_nr(n, r);
    if (trials < 1) throw Error(ErrorCode::ParameterOutOfRange, "trials must be >= 1");
    const std::uint64_t total = binomial(n, r);
    Rng rng(seed);
    std::vector<char> covered(n + 1);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::fill(covered.begin(), covered.end(), 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (Vertex v : colex_unrank(rng.below(total), r))
                if (!covered[v]) {
                    covered[v] = 1;
                    ++count;
                }
        if (count == n) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

const char* to_string(Variant v) noexcept { return v == Variant::weak ? "weak" : "ordinary"; }

Variant variant_from_string(const std::string& s) {
    if (s == "weak") return Variant::weak;
    if (s == "ordinary") return Variant::ordinary;
    throw Error(ErrorCode::ConfigInvalid, "variant must be weak or ordinary, got '" + s + "'");
}

const char* to_string(Replacement m) noexcept { return m == Replacement::with ? "with" : "without"; }

Replacement replacement_from_string(const std::string& s) {
    if (s == "with") return Replacement::with;
    if (s == "without") return Replacement::without;
    throw Error(ErrorCode::ConfigInvalid, "mode must be with or without, got '" + s + "'");
}

} // namespace bergelab
