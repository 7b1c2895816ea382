#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "bergelab/hypergraph.hpp"
#include "bergelab/rng.hpp"

namespace bergelab {

enum class Variant { weak, ordinary };

/// G(n, r, p): every r-subset independently with probability p. Uses
/// geometric skipping over colex ranks, so cost is O(expected m).
Hypergraph gnrp_sample(std::size_t n, std::size_t r, double p, std::uint64_t seed);

/// Lazily yields a uniformly random permutation of the C(n, r) colex ranks
/// (sparse Fisher-Yates). The first t outputs do not depend on how many more
/// are drawn later.
class ProcessStream {
public:
    ProcessStream(std::size_t n, std::size_t r, std::uint64_t seed);

    std::optional<std::uint64_t> next();
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t emitted() const noexcept { return emitted_; }

private:
    std::uint64_t total_;
    std::uint64_t emitted_ = 0;
    Rng rng_;
    std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

/// Prefix of a random ordering of all r-subsets of [n]; prefix(t) is H(t).
struct ProcessTrace {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<std::uint64_t> order;  // colex ranks

    std::size_t length() const noexcept { return order.size(); }
    std::vector<Vertex> edge_at(std::size_t index) const;
    Hypergraph prefix(std::size_t t) const;
    /// True when order is the complete permutation of C(n, r) subsets.
    bool complete() const;
};

ProcessTrace process_sample(std::size_t n, std::size_t r, std::uint64_t seed,
                            std::optional<std::size_t> length = std::nullopt);

/// Trace built from explicit edges (fixtures, replays).
ProcessTrace trace_from_edges(std::size_t n, std::size_t r, const std::vector<std::vector<Vertex>>& edges);

/// Least t with min degree of prefix(t) >= k. Throws Unreachable if the trace
/// ends first.
std::size_t stopping_time(const ProcessTrace& trace, std::size_t k);

/// Incremental minimum-degree tracker shared by stopping_time and the
/// streaming experiment loop.
class MinDegreeTracker {
public:
    MinDegreeTracker(std::size_t n, std::size_t cap);
    void add(std::span<const Vertex> edge);
    /// min over v of min(degree(v), cap).
    std::size_t min_degree() const noexcept { return min_degree_; }

private:
    std::size_t cap_;
    std::vector<std::size_t> degree_;
    std::vector<std::size_t> count_at_;  // count_at_[d] = #vertices with capped degree d
    std::size_t min_degree_ = 0;
};

enum class Replacement { with, without };

/// Each vertex v picks k uniform r-sets containing v. The hypergraph is the
/// union with repeated sets collapsed; choice_ids keeps, per vertex, the
/// EdgeIds of its picks in draw order.
struct KOutSample {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t k = 0;
    Replacement mode = Replacement::with;
    Hypergraph hypergraph = Hypergraph::empty(2, 2);
    std::vector<std::vector<EdgeId>> choice_ids;  // index v (1..n); [0] unused
    std::vector<std::size_t> multiplicity;        // per EdgeId: number of picks

    std::size_t distinct_edges() const noexcept { return hypergraph.m(); }
};

KOutSample kout_sample(std::size_t n, std::size_t r, std::size_t k, Replacement mode, std::uint64_t seed);

/// Builds a sample from explicit picks (choices[v-1] = E_v).
KOutSample kout_from_choices(std::size_t n, std::size_t r,
                             const std::vector<std::vector<std::vector<Vertex>>>& choices,
                             Replacement mode = Replacement::with);

nlohmann::json kout_sidecar(const KOutSample& sample);

enum class ArcSign { minus, plus };

struct ArcOrigin {
    Vertex vertex;  // the vertex whose pick produced the arc
    EdgeId edge;    // EdgeId in the sample's hypergraph
    ArcSign sign;
    bool operator==(const ArcOrigin&) const = default;
};

/// Simple digraph on 1..n. Parallel arcs collapse; provenance keeps every
/// origin of an arc.
class Digraph {
public:
    explicit Digraph(std::size_t n);

    void add_arc(Vertex from, Vertex to, std::optional<ArcOrigin> origin = std::nullopt);

    std::size_t n() const noexcept { return out_.size() - 1; }
    std::size_t arc_count() const noexcept { return arc_count_; }
    std::span<const Vertex> out(Vertex v) const noexcept { return out_[v]; }
    std::span<const Vertex> in(Vertex v) const noexcept { return in_[v]; }
    bool has_arc(Vertex from, Vertex to) const noexcept;
    std::span<const ArcOrigin> provenance(Vertex from, Vertex to) const noexcept;
    std::vector<std::pair<Vertex, Vertex>> arcs() const;

private:
    std::uint64_t key(Vertex from, Vertex to) const noexcept {
        return static_cast<std::uint64_t>(from) * out_.size() + to;
    }

    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::unordered_map<std::uint64_t, std::vector<ArcOrigin>> provenance_;
    std::size_t arc_count_ = 0;
};

/// Per vertex a fair coin decides which pick is e_v^-; arcs u->v for
/// u in e_v^- \ {v} and v->w for w in e_v^+ \ {v}.
Digraph orient_two_out(const KOutSample& sample, std::uint64_t seed);

/// Same construction with explicit labels: first_is_minus[v-1] selects
/// E_v[0] as e_v^- (otherwise E_v[1]).
Digraph orient_two_out_labeled(const KOutSample& sample, const std::vector<bool>& first_is_minus);

/// (r-1)! (log n + [log log n] + c) / n^(r-1), clamped to [0, 1]; the
/// log log n term is present for the ordinary variant only.
double threshold_p(std::size_t n, std::size_t r, double c, Variant variant);

/// exp(-exp(-c)).
double limit_probability(double c);

/// Fraction of trials in which n uniform r-subsets of [n] cover every vertex.
double coupon_cover_estimate(std::size_t n, std::size_t r, std::size_t trials, std::uint64_t seed);

const char* to_string(Variant v) noexcept;
Variant variant_from_string(const std::string& s);
const char* to_string(Replacement m) noexcept;
Replacement replacement_from_string(const std::string& s);

} // namespace bergelab
